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

#include "bpomdp/exact_solver.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace bpomdp {

void SpecialMDP::validate() const {
  if (s_max < 1) throw DomainError("special MDP needs s_max >= 1");
  if (d0 < 1) throw DomainError("special MDP needs d0 >= 1");
  if (reward <= 0) throw DomainError("special MDP needs a positive reward");
}

ValueTable::ValueTable(const SpecialMDP& mdp, int max_horizon, int max_budget)
    : mdp_(mdp), max_horizon_(max_horizon), max_budget_(max_budget) {
  mdp_.validate();
  if (max_horizon < 0 || max_budget < 0) {
    throw DomainError("value table dimensions must be nonnegative");
  }
  values_.assign(static_cast<std::size_t>(max_horizon + 1) * (mdp.s_max + 1) *
                     (max_budget + 1),
                 0);
  for (int h = 0; h <= max_horizon; ++h) {
    for (State s = 1; s <= mdp.s_max; ++s) {
      for (int b = 0; b <= max_budget; ++b) {
        Value v = mdp.reward;
        if (h > 0) {
          Value best = at(h - 1, mdp.decay(s), b);
          if (b > 0) best = std::max(best, at(h - 1, mdp.s_max, b - 1));
          v += best;
        }
        values_[index(h, s, b)] = v;
      }
    }
  }
}

std::size_t ValueTable::index(int horizon, State s, int budget) const {
  return (static_cast<std::size_t>(horizon) * (mdp_.s_max + 1) + s) *
             (max_budget_ + 1) +
         budget;
}

Value ValueTable::at(int horizon, State s, int budget) const {
  if (horizon < 0 || horizon > max_horizon_ || s < 0 || s > mdp_.s_max ||
      budget < 0 || budget > max_budget_) {
    throw DomainError("value table lookup out of range");
  }
  return values_[index(horizon, s, budget)];
}

Value ValueTable::first_action_value(int horizon, State s, int budget,
                                     Action a) const {
  if (horizon < 1) throw DomainError("first action needs horizon >= 1");
  const Value now = s > 0 ? mdp_.reward : 0;
  switch (a) {
    case Action::kReplace:
      if (budget < 1) throw DomainError("replace needs budget >= 1");
      return now + at(horizon - 1, s == 0 ? 0 : mdp_.s_max, budget - 1);
    case Action::kDoNothing:
      return now + at(horizon - 1, mdp_.decay(s), budget);
    case Action::kInspect:
      break;
  }
  throw DomainError("the special class has no inspect action");
}

Value exact_value(const SpecialMDP& mdp, int horizon, State s0, int budget) {
  if (horizon < 0 || budget < 0) throw DomainError("negative horizon or budget");
  if (s0 < 0 || s0 > mdp.s_max) throw DomainError("initial state out of range");
  return ValueTable(mdp, horizon, budget).at(horizon, s0, budget);
}

Value brute_force_value(const SpecialMDP& mdp, int horizon, State s0,
                        int budget) {
  mdp.validate();
  if (horizon < 0 || budget < 0) throw DomainError("negative horizon or budget");
  if (horizon > kBruteForceMaxHorizon) {
    throw DomainError("brute force refuses horizon " + std::to_string(horizon) +
                      " (limit " + std::to_string(kBruteForceMaxHorizon) + ")");
  }
  if (s0 < 0 || s0 > mdp.s_max) throw DomainError("initial state out of range");
  Value best = 0;
  const std::uint32_t sequences = 1u << horizon;
  for (std::uint32_t seq = 0; seq < sequences; ++seq) {
    // Bit t set means replace at step t.
    if (std::popcount(seq) > budget) continue;
    State s = s0;
    Value total = s > 0 ? mdp.reward : 0;
    for (int t = 0; t < horizon; ++t) {
      if (s == 0) break;
      s = ((seq >> t) & 1u) ? mdp.s_max : mdp.decay(s);
      if (s > 0) total += mdp.reward;
    }
    best = std::max(best, total);
  }
  return best;
}

int saturation_budget(State s0, State d0, int horizon) {
  if (s0 < 0 || d0 < 1 || horizon < 0) {
    throw DomainError("saturation_budget: invalid arguments");
  }
  if (s0 == 0) return 0;
  return s0 > d0 ? horizon / 2 : (horizon + 1) / 2;
}

namespace {

void record(TheoryReport& report, const char* property, const SpecialMDP& mdp,
            int h, State s, int b, std::string detail) {
  report.violations.push_back(TheoryViolation{property, mdp.s_max, mdp.d0, h, s,
                                              b, std::move(detail)});
}

std::string values_detail(std::initializer_list<Value> values) {
  std::ostringstream os;
  const char* sep = "";
  for (Value v : values) {
    os << sep << v;
    sep = ", ";
  }
  return os.str();
}

}  // namespace

TheoryReport check_theory(const TheoryGrid& grid,
                          const TheoryCheckOptions& options) {
  if (grid.s_max_lo < 1 || grid.d0_lo < 1 || grid.horizon_lo < 0 ||
      grid.budget_lo < 0 || grid.s_max_hi < grid.s_max_lo ||
      grid.d0_hi < grid.d0_lo || grid.horizon_hi < grid.horizon_lo ||
      grid.budget_hi < grid.budget_lo) {
    throw DomainError("invalid theory grid");
  }
  TheoryReport report;
  for (State s_max = grid.s_max_lo; s_max <= grid.s_max_hi; ++s_max) {
    for (State d0 = grid.d0_lo; d0 <= grid.d0_hi; ++d0) {
      const SpecialMDP mdp{s_max, d0, 1};
      const ValueTable table(mdp, grid.horizon_hi, grid.budget_hi);
      const bool single_step = s_max <= d0;
      for (int h = grid.horizon_lo; h <= grid.horizon_hi; ++h) {
        for (State s = 0; s <= s_max; ++s) {
          for (int b = grid.budget_lo; b <= grid.budget_hi; ++b) {
            ++report.points_checked;
            const Value v = table.at(h, s, b);
            if (s < s_max) {
              ++report.monotone_state_checks;
              const Value up = table.at(h, s + 1, b);
              if (up < v) {
                record(report, "monotone-in-state", mdp, h, s, b,
                       "V(s+1)=" + std::to_string(up) +
                           " < V(s)=" + std::to_string(v));
              }
            }
            if (b < grid.budget_hi) {
              ++report.monotone_budget_checks;
              const Value next = table.at(h, s, b + 1);
              if (next < v) {
                record(report, "monotone-in-budget", mdp, h, s, b,
                       "V(b+1)=" + std::to_string(next) +
                           " < V(b)=" + std::to_string(v));
              }
            }
            if (b + 2 <= grid.budget_hi) {
              ++report.concavity_checks;
              const Value v1 = table.at(h, s, b + 1);
              const Value v2 = table.at(h, s, b + 2);
              if (v2 - v1 > v1 - v) {
                record(report, "concave-in-budget", mdp, h, s, b,
                       "V(b..b+2) = " + values_detail({v, v1, v2}));
              }
              if (2 * v1 != v + v2) ++report.strict_midpoint_points;
            }
            if (h >= 1 && b > 0 && s > 0) {
              const Value vd = table.first_action_value(h, s, b, Action::kDoNothing);
              const Value vm = table.first_action_value(h, s, b, Action::kReplace);
              if (s > d0) {
                ++report.do_nothing_first_checks;
                if (vd != v) {
                  record(report, "do-nothing-first-optimal", mdp, h, s, b,
                         "V^d=" + std::to_string(vd) + ", V^m=" +
                             std::to_string(vm) + ", V=" + std::to_string(v));
                }
              } else {
                ++report.replace_first_checks;
                if (vm != v) {
                  record(report, "replace-first-optimal", mdp, h, s, b,
                         "V^d=" + std::to_string(vd) + ", V^m=" +
                             std::to_string(vm) + ", V=" + std::to_string(v));
                }
              }
            }
            if (b < grid.budget_hi) {
              const int half = saturation_budget(s, d0, h);
              const bool flat_here = table.at(h, s, b + 1) == v;
              if (single_step && s > 0) {
                ++report.single_step_regime_points;
                if (b >= half && !flat_here) ++report.half_horizon_threshold_failures;
              }
              const int threshold =
                  (single_step && s > 0 && !options.strict_flatness) ? h : half;
              if (b >= threshold) {
                ++report.flatness_checks;
                if (!flat_here) {
                  record(report, "flat-beyond-saturation", mdp, h, s, b,
                         "threshold " + std::to_string(threshold) + ", V(b)=" +
                             std::to_string(v) + ", V(b+1)=" +
                             std::to_string(table.at(h, s, b + 1)));
                }
              }
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace bpomdp
