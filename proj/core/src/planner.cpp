// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bpomdp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bpomdp {

std::string_view to_string(RolloutPolicy p) {
  switch (p) {
    case RolloutPolicy::kRandomFeasible:
      return "random-feasible";
    case RolloutPolicy::kAlwaysDoNothing:
      return "always-d";
    case RolloutPolicy::kReplaceAtRisk:
      return "replace-at-risk";
  }
  return "?";
}

RolloutPolicy parse_rollout_policy(std::string_view text) {
  if (text == "random-feasible" || text == "random") return RolloutPolicy::kRandomFeasible;
  if (text == "always-d") return RolloutPolicy::kAlwaysDoNothing;
  if (text == "replace-at-risk") return RolloutPolicy::kReplaceAtRisk;
  throw DomainError("unknown rollout policy '" + std::string(text) + "'");
}

void PlannerConfig::validate() const {
  if (n_simulations < 1) throw DomainError("n_simulations must be >= 1");
  if (max_depth < 1) throw DomainError("max_depth must be >= 1");
  if (!(ucb_c >= 0.0)) throw DomainError("ucb_c must be >= 0");
  if (horizon_remaining < 0) throw DomainError("horizon_remaining must be >= 0");
  if (total_budget < 0) throw DomainError("total_budget must be >= 0");
  if (rollout_depth < 0) throw DomainError("rollout_depth must be >= 0");
  if (value_passes < 0) throw DomainError("value_passes must be >= 0");
}

Planner::Planner(const ComponentModel& model, PlannerConfig config)
    : model_(model), config_(config) {
  config_.validate();
  at_risk_.resize(static_cast<std::size_t>(model.s_max()) + 1);
  for (State s = 0; s <= model.s_max(); ++s) {
    at_risk_[s] = s > 0 && model.decay_row(s)[0] > 0.0;
  }
}

SearchResult Planner::search(const Belief& belief, Rng& rng) {
  if (belief.empty()) throw DomainError("cannot plan from an empty belief");
  const ActionSet root_actions =
      feasible_actions(model_, belief.c, config_.total_budget);
  if (budget_exhausted(model_, belief.c, config_.total_budget)) {
    throw BudgetExhausted("no action fits the remaining budget");
  }

  histories_.clear();
  action_nodes_.clear();
  histories_.reserve(static_cast<std::size_t>(config_.n_simulations) + 1);
  action_nodes_.reserve(static_cast<std::size_t>(config_.n_simulations) + 3);
  histories_.emplace_back();
  depth_limit_ = std::min(config_.max_depth, config_.horizon_remaining);
  rollout_limit_ = config_.rollout_depth > 0
                       ? std::min(std::max(config_.rollout_depth, depth_limit_),
                                  config_.horizon_remaining)
                       : config_.horizon_remaining;

  SearchResult result;
  if (depth_limit_ == 0) {
    result.root_value = belief.alive_fraction() * kAliveReward;
    result.search_value = result.root_value;
    for (int i = 0; i < root_actions.size(); ++i) {
      result.actions.push_back(ActionStats{root_actions.nth(i), 0, 0.0});
    }
    result.tree_nodes = 1;
    return result;
  }

  const auto n_particles = static_cast<std::uint64_t>(belief.particles.size());
  for (int i = 0; i < config_.n_simulations; ++i) {
    const State s = belief.particles[rng.below(n_particles)];
    simulate(s, belief.c, 0, 0, rng);
  }

  double best = -1.0;
  for (Action a : kAllActions) {
    const int idx = histories_[0].actions[static_cast<int>(a)];
    if (idx < 0) continue;
    const ActionNode& node = action_nodes_[idx];
    result.actions.push_back(ActionStats{a, node.visits, node.value});
    if (node.visits > 0 && node.value > best) {
      best = node.value;
      result.action = a;
    }
  }
  const double now = belief.alive_fraction() * kAliveReward;
  result.search_value = now + std::max(best, 0.0);

  const int passes = config_.value_passes > 0
                         ? config_.value_passes
                         : std::max(1, config_.n_simulations / 10);
  double total = 0.0;
  for (int i = 0; i < passes; ++i) {
    const State s = belief.particles[rng.below(n_particles)];
    total += greedy_pass(s, belief.c, rng);
  }
  result.root_value = now + total / passes;
  result.tree_nodes = histories_.size() + action_nodes_.size();
  return result;
}

double Planner::simulate(State s, Cost c, int node, int depth, Rng& rng) {
  ++histories_[node].visits;
  if (s == 0 || budget_exhausted(model_, c, config_.total_budget)) return 0.0;
  if (depth >= depth_limit_) return rollout(s, c, depth, rng);
  const Action a = select_action(node, c, rng);
  const StepResult out =
      step_with(model_, BState{s, c}, a, config_.total_budget, rng.uniform());
  const int action_node = histories_[node].actions[static_cast<int>(a)];

  bool created = false;
  const int child = child_for(action_node, out.obs.key(), created);
  double future = 0.0;
  if (created) {
    ++histories_[child].visits;
    future = rollout(out.next.s, out.next.c, depth + 1, rng);
  } else {
    future = simulate(out.next.s, out.next.c, child, depth + 1, rng);
  }
  const double total = out.reward + future;

  ActionNode& an = action_nodes_[action_node];
  ++an.visits;
  an.value += (total - an.value) / an.visits;
  return total;
}

double Planner::rollout(State s, Cost c, int depth, Rng& rng) {
  double total = 0.0;
  for (; depth < rollout_limit_ && s > 0; ++depth) {
    if (budget_exhausted(model_, c, config_.total_budget)) break;
    Action a = Action::kDoNothing;
    if (config_.rollout == RolloutPolicy::kRandomFeasible) {
      const ActionSet set = feasible_actions(model_, c, config_.total_budget);
      a = set.nth(static_cast<int>(rng.below(set.size())));
    } else if (config_.rollout == RolloutPolicy::kReplaceAtRisk && at_risk_[s] &&
               c + model_.costs().m <= config_.total_budget) {
      a = Action::kReplace;
    }
    const double u = rng.uniform();
    c += model_.cost(a);
    s = a == Action::kReplace ? model_.s_max() : model_.sample_decay(s, u);
    if (s > 0) total += kAliveReward;
  }
  return total;
}

double Planner::greedy_pass(State s, Cost c, Rng& rng) {
  double total = 0.0;
  int node = 0;
  for (int depth = 0; depth < rollout_limit_; ++depth) {
    if (s == 0 || budget_exhausted(model_, c, config_.total_budget)) return total;
    if (depth >= depth_limit_) return total + rollout(s, c, depth, rng);
    const ActionSet feasible = feasible_actions(model_, c, config_.total_budget);
    int best_node = -1;
    Action best_action = Action::kDoNothing;
    for (int i = 0; i < feasible.size(); ++i) {
      const Action a = feasible.nth(i);
      const int idx = histories_[node].actions[static_cast<int>(a)];
      if (idx < 0 || action_nodes_[idx].visits == 0) continue;
      if (best_node < 0 || action_nodes_[idx].value > action_nodes_[best_node].value) {
        best_node = idx;
        best_action = a;
      }
    }
    if (best_node < 0) return total + rollout(s, c, depth, rng);
    const StepResult out =
        step_with(model_, BState{s, c}, best_action, config_.total_budget, rng.uniform());
    total += out.reward;
    s = out.next.s;
    c = out.next.c;
    node = -1;
    for (const auto& [key, idx] : action_nodes_[best_node].children) {
      if (key == out.obs.key()) node = idx;
    }
    if (node < 0) return total + rollout(s, c, depth + 1, rng);
  }
  return total;
}

Action Planner::select_action(int node, Cost c, Rng& rng) {
  const ActionSet feasible = feasible_actions(model_, c, config_.total_budget);

  std::array<Action, 3> untried{};
  int n_untried = 0;
  for (int i = 0; i < feasible.size(); ++i) {
    const Action a = feasible.nth(i);
    if (histories_[node].actions[static_cast<int>(a)] < 0) untried[n_untried++] = a;
  }
  if (n_untried > 0) {
    const Action a = untried[rng.below(static_cast<std::uint64_t>(n_untried))];
    histories_[node].actions[static_cast<int>(a)] =
        static_cast<int>(action_nodes_.size());
    action_nodes_.emplace_back();
    return a;
  }

  const double log_n = std::log(static_cast<double>(histories_[node].visits));
  Action best_action = feasible.nth(0);
  double best = -1.0;
  for (int i = 0; i < feasible.size(); ++i) {
    const Action a = feasible.nth(i);
    const ActionNode& an = action_nodes_[histories_[node].actions[static_cast<int>(a)]];
    const double score =
        an.visits == 0
            ? std::numeric_limits<double>::infinity()
            : an.value + config_.ucb_c * std::sqrt(log_n / an.visits);
    if (score > best) {
      best = score;
      best_action = a;
    }
  }
  return best_action;
}

int Planner::child_for(int action_node, int obs_key, bool& created) {
  for (const auto& [key, idx] : action_nodes_[action_node].children) {
    if (key == obs_key) return idx;
  }
  const int idx = static_cast<int>(histories_.size());
  histories_.emplace_back();
  action_nodes_[action_node].children.emplace_back(obs_key, idx);
  created = true;
  return idx;
}

Action plan(const ComponentModel& model, const Belief& belief,
            const PlannerConfig& config, Rng& rng) {
  return Planner(model, config).search(belief, rng).action;
}

double root_value(const ComponentModel& model, const Belief& belief,
                  const PlannerConfig& config, Rng& rng) {
  return Planner(model, config).search(belief, rng).root_value;
}

}  // namespace bpomdp
