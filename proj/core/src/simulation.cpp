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

#include "bpomdp/simulation.hpp"

namespace bpomdp {

namespace {

constexpr std::uint64_t kEnvironmentStream = 0x656e76;  // "env"

}  // namespace

void BaselinePolicyConfig::validate(const ComponentModel& model) const {
  if (inspect_every < 1) throw DomainError("inspect_every must be >= 1");
  if (replace_threshold < 0 || replace_threshold > model.s_max()) {
    throw DomainError("replace_threshold must lie in {0..s_max}");
  }
}

std::string_view to_string(PolicyKind kind) {
  return kind == PolicyKind::kBaseline ? "baseline" : "pomcp";
}

PolicyKind parse_policy_kind(std::string_view text) {
  if (text == "pomcp") return PolicyKind::kPomcp;
  if (text == "baseline") return PolicyKind::kBaseline;
  throw DomainError("unknown policy '" + std::string(text) + "'");
}

int EpisodeTrace::ttf() const {
  if (s0 == 0) return 0;
  const auto n = static_cast<int>(steps.size());
  return failed ? n : n + 1;
}

int EpisodeTrace::total_reward() const {
  int total = initial_reward;
  for (const auto& step : steps) total += step.reward;
  return total;
}

State most_probable_next(const ComponentModel& model, State s, TieBreak tie) {
  const auto row = model.decay_row(s);
  State best = 0;
  for (State next = 1; next < static_cast<State>(row.size()); ++next) {
    if (row[next] > row[best] || (tie == TieBreak::kHigher && row[next] == row[best])) {
      best = next;
    }
  }
  return best;
}

Action baseline_step(const ComponentModel& model, State estimate, int t, Cost c,
                     Cost budget, const BaselinePolicyConfig& config) {
  model.check_state(estimate);
  const ActionSet feasible = feasible_actions(model, c, budget);
  if (t > 0 && t % config.inspect_every == 0 && feasible.contains(Action::kInspect)) {
    return Action::kInspect;
  }
  if (estimate < config.replace_threshold && feasible.contains(Action::kReplace)) {
    return Action::kReplace;
  }
  return Action::kDoNothing;
}

EpisodeTrace run_episode(const ComponentModel& model, const PolicySpec& policy,
                         Cost budget, State s0, int horizon, std::uint64_t seed) {
  if (budget < 0) throw DomainError("budget must be nonnegative");
  if (horizon < 0) throw DomainError("horizon must be nonnegative");
  model.check_state(s0);
  if (policy.kind == PolicyKind::kBaseline) policy.baseline.validate(model);
  if (policy.kind == PolicyKind::kPomcp && policy.n_particles == 0) {
    throw DomainError("POMCP needs at least one particle");
  }

  EpisodeTrace trace;
  trace.component = model.name();
  trace.policy = policy.kind;
  trace.budget = budget;
  trace.seed = seed;
  trace.s0 = s0;
  trace.horizon = horizon;
  trace.initial_reward = s0 > 0 ? kAliveReward : 0;
  trace.steps.reserve(static_cast<std::size_t>(horizon));

  Rng environment(derive_seed(seed, {kEnvironmentStream}));
  BState state{s0, 0};
  Belief belief;
  State estimate = s0;
  if (policy.kind == PolicyKind::kPomcp) belief = Belief::point(s0, 0, policy.n_particles);

  for (int t = 0; t < horizon; ++t) {
    if (state.s == 0) break;
    if (budget_exhausted(model, state.c, budget)) {
      trace.budget_limited = true;
      break;
    }
    Rng decision(derive_seed(seed, {static_cast<std::uint64_t>(budget),
                                    static_cast<std::uint64_t>(t)}));
    Action a = Action::kDoNothing;
    double belief_mean = 0.0;
    if (policy.kind == PolicyKind::kPomcp) {
      PlannerConfig cfg = policy.planner;
      cfg.total_budget = budget;
      cfg.horizon_remaining = horizon - t;
      a = Planner(model, cfg).search(belief, decision).action;
      belief_mean = belief.mean();
    } else {
      a = baseline_step(model, estimate, t, state.c, budget, policy.baseline);
      belief_mean = estimate;
    }

    const double u = environment.uniform();
    const StepResult out = step_with(model, state, a, budget, u);
    trace.steps.push_back(TraceStep{t, state.s, belief_mean, a, out.obs,
                                    out.next.s, model.cost(a), out.next.c,
                                    out.reward});

    if (policy.kind == PolicyKind::kPomcp) {
      belief = update_belief(model, belief, a, out.obs, decision);
    } else {
      estimate = out.obs.is_null()
                     ? most_probable_next(model, estimate, policy.baseline.tie_break)
                     : out.obs.state();
    }
    state = out.next;
  }
  trace.failed = state.s == 0;
  trace.horizon_end = !trace.failed && !trace.budget_limited;
  check_budget_safety(trace);
  return trace;
}

void check_budget_safety(const EpisodeTrace& trace) {
  Cost previous = 0;
  for (const auto& step : trace.steps) {
    if (step.cumulative < previous || step.cumulative > trace.budget) {
      throw BudgetViolation("trace for '" + trace.component + "' at t=" +
                            std::to_string(step.t) + " has cumulative cost " +
                            std::to_string(step.cumulative) + " against budget " +
                            std::to_string(trace.budget));
    }
    previous = step.cumulative;
  }
}

}  // namespace bpomdp
