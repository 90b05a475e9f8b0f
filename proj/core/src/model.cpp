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

#include "bpomdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bpomdp {

namespace {

constexpr double kRowTolerance = 1e-9;

std::string row_error(const std::string& name, State s, const std::string& what) {
  std::ostringstream os;
  os << "component '" << name << "': decay row for state " << s << " " << what;
  return os.str();
}

}  // namespace

std::string_view to_string(Action a) {
  switch (a) {
    case Action::kDoNothing:
      return "D";
    case Action::kInspect:
      return "Q";
    case Action::kReplace:
      return "M";
  }
  return "?";
}

Action parse_action(std::string_view text) {
  if (text == "D" || text == "do-nothing") return Action::kDoNothing;
  if (text == "Q" || text == "inspect") return Action::kInspect;
  if (text == "M" || text == "replace") return Action::kReplace;
  throw DomainError("unknown action '" + std::string(text) + "'");
}

Action ActionSet::nth(int i) const {
  for (Action a : kAllActions) {
    if (contains(a) && i-- == 0) return a;
  }
  throw DomainError("ActionSet::nth out of range");
}

Observation Observation::exact(State s) {
  if (s < 0) throw DomainError("observation state must be nonnegative");
  return Observation(s);
}

State Observation::state() const {
  if (is_null()) throw DomainError("null observation carries no state");
  return key_;
}

std::string to_string(Observation o) {
  return o.is_null() ? std::string("null") : std::to_string(o.state());
}

ComponentModel::ComponentModel(std::string name, State s_max,
                               std::vector<std::vector<double>> decay_rows,
                               ActionCosts costs)
    : name_(std::move(name)), s_max_(s_max), costs_(costs) {
  if (s_max_ < 1) {
    throw DomainError("component '" + name_ + "': s_max must be >= 1");
  }
  if (costs_.d < 0 || costs_.q < 0 || costs_.m < 0) {
    throw DomainError("component '" + name_ + "': costs must be nonnegative");
  }
  if (decay_rows.size() != static_cast<std::size_t>(s_max_)) {
    throw DomainError("component '" + name_ + "': expected " +
                      std::to_string(s_max_) + " decay rows, got " +
                      std::to_string(decay_rows.size()));
  }
  rows_.reserve(s_max_ + 1);
  rows_.push_back({1.0});
  for (State s = 1; s <= s_max_; ++s) {
    auto& row = decay_rows[s - 1];
    if (row.size() != static_cast<std::size_t>(s) + 1) {
      throw DomainError(row_error(name_, s, "must have " +
                                                std::to_string(s + 1) +
                                                " entries over {0.." +
                                                std::to_string(s) + "}"));
    }
    double total = 0.0;
    for (double p : row) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw DomainError(row_error(name_, s, "has a negative or non-finite entry"));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kRowTolerance) {
      std::ostringstream os;
      os << "sums to " << total << ", not 1";
      throw DomainError(row_error(name_, s, os.str()));
    }
    rows_.push_back(std::move(row));
  }
  cdf_.reserve(rows_.size());
  for (const auto& row : rows_) {
    std::vector<double> c(row.size());
    std::partial_sum(row.begin(), row.end(), c.begin());
    c.back() = 1.0;
    cdf_.push_back(std::move(c));
  }
}

ComponentModel ComponentModel::deterministic(std::string name, State s_max,
                                             State d0, ActionCosts costs) {
  if (d0 < 1) throw DomainError("deterministic decay needs d0 >= 1");
  std::vector<std::vector<double>> rows;
  for (State s = 1; s <= s_max; ++s) {
    std::vector<double> row(s + 1, 0.0);
    row[std::max(s - d0, 0)] = 1.0;
    rows.push_back(std::move(row));
  }
  return ComponentModel(std::move(name), s_max, std::move(rows), costs);
}

Cost ComponentModel::cost(Action a) const {
  switch (a) {
    case Action::kDoNothing:
      return costs_.d;
    case Action::kInspect:
      return costs_.q;
    case Action::kReplace:
      return costs_.m;
  }
  return 0;
}

void ComponentModel::check_state(State s) const {
  if (s < 0 || s > s_max_) {
    throw DomainError("state " + std::to_string(s) + " outside {0.." +
                      std::to_string(s_max_) + "} for component '" + name_ + "'");
  }
}

double ComponentModel::decay_prob(State s, State next) const {
  check_state(s);
  check_state(next);
  if (next > s) return 0.0;
  return rows_[s][next];
}

std::span<const double> ComponentModel::decay_row(State s) const {
  check_state(s);
  return rows_[s];
}

State ComponentModel::sample_decay(State s, double u) const {
  const auto& c = cdf_[s];
  // First index whose cumulative mass exceeds u; zero-probability states are
  // never selected because their cdf entry equals the previous one.
  auto it = std::upper_bound(c.begin(), c.end(), u);
  if (it == c.end()) --it;
  return static_cast<State>(it - c.begin());
}

Belief Belief::point(State s, Cost c, std::size_t n) {
  return Belief{std::vector<State>(n, s), c};
}

double Belief::mean() const {
  if (particles.empty()) return 0.0;
  double total = 0.0;
  for (State s : particles) total += s;
  return total / static_cast<double>(particles.size());
}

State Belief::mode() const {
  if (particles.empty()) throw DomainError("mode of an empty belief");
  const State top = *std::max_element(particles.begin(), particles.end());
  std::vector<int> counts(top + 1, 0);
  for (State s : particles) ++counts[s];
  return static_cast<State>(std::max_element(counts.begin(), counts.end()) -
                            counts.begin());
}

double Belief::alive_fraction() const {
  if (particles.empty()) return 0.0;
  const auto alive = std::count_if(particles.begin(), particles.end(),
                                   [](State s) { return s > 0; });
  return static_cast<double>(alive) / static_cast<double>(particles.size());
}

double transition_prob(const ComponentModel& model, State s, Action a,
                       State next) {
  model.check_state(s);
  model.check_state(next);
  if (s == 0) return next == 0 ? 1.0 : 0.0;
  if (a == Action::kReplace) return next == model.s_max() ? 1.0 : 0.0;
  return model.decay_prob(s, next);
}

Observation observe(const ComponentModel& model, State next, Action a) {
  model.check_state(next);
  return a == Action::kDoNothing ? Observation::null() : Observation::exact(next);
}

Cost action_cost(const ComponentModel& model, Action a) { return model.cost(a); }

ActionSet feasible_actions(const ComponentModel& model, Cost c, Cost budget) {
  if (c > budget) {
    throw BudgetViolation("cumulative cost " + std::to_string(c) +
                          " exceeds budget " + std::to_string(budget));
  }
  ActionSet set;
  for (Action a : kAllActions) {
    if (c + model.cost(a) <= budget) set.insert(a);
  }
  if (set.empty()) set.insert(Action::kDoNothing);
  return set;
}

bool budget_exhausted(const ComponentModel& model, Cost c, Cost budget) {
  return c + model.costs().d > budget;
}

StepResult step_with(const ComponentModel& model, BState current, Action a,
                     Cost budget, double u) {
  model.check_state(current.s);
  const Cost next_c = current.c + model.cost(a);
  if (next_c > budget) {
    throw BudgetViolation("action " + std::string(to_string(a)) + " costs " +
                          std::to_string(model.cost(a)) + " but only " +
                          std::to_string(budget - current.c) + " remains");
  }
  State next_s = 0;
  if (current.s == 0) {
    next_s = 0;
  } else if (a == Action::kReplace) {
    next_s = model.s_max();
  } else {
    next_s = model.sample_decay(current.s, u);
  }
  return StepResult{BState{next_s, next_c}, observe(model, next_s, a),
                    next_s > 0 ? kAliveReward : 0};
}

StepResult step(const ComponentModel& model, BState current, Action a,
                Cost budget, Rng& rng) {
  return step_with(model, current, a, budget, rng.uniform());
}

Belief update_belief(const ComponentModel& model, const Belief& belief,
                     Action a, Observation o, Rng& rng) {
  if (belief.empty()) throw DomainError("belief has no particles");
  if (a == Action::kDoNothing && !o.is_null()) {
    throw DomainError("do-nothing cannot yield an exact observation");
  }
  if (a != Action::kDoNothing && o.is_null()) {
    throw DomainError("inspect and replace always yield an exact observation");
  }
  Belief next;
  next.c = belief.c + model.cost(a);
  if (!o.is_null()) {
    model.check_state(o.state());
    next.particles.assign(belief.particles.size(), o.state());
    return next;
  }
  next.particles.reserve(belief.particles.size());
  for (State s : belief.particles) {
    next.particles.push_back(s == 0 ? 0 : model.sample_decay(s, rng.uniform()));
  }
  return next;
}

}  // namespace bpomdp
