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

// Exact dynamic programming for the deterministic, fully observable special
// class: the condition drops by a fixed d0 per step unless the component is
// replaced at unit cost, and 0 is absorbing.
//
// Horizon convention: V_H(s, b) collects H + 1 rewards, one for each time
// point t = 0..H. V_0(s, b) = r for s > 0. Everything here is exact integer
// arithmetic.

#ifndef BPOMDP_EXACT_SOLVER_HPP_
#define BPOMDP_EXACT_SOLVER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "bpomdp/model.hpp"

namespace bpomdp {

using Value = std::int64_t;

struct SpecialMDP {
  State s_max = 1;
  State d0 = 1;
  Value reward = 1;

  // Throws DomainError unless s_max >= 1, d0 >= 1, reward > 0.
  void validate() const;
  State decay(State s) const { return s <= d0 ? 0 : s - d0; }
};

// Optimal values V[H][s][b] for H <= max_horizon, b <= max_budget.
class ValueTable {
 public:
  ValueTable(const SpecialMDP& mdp, int max_horizon, int max_budget);

  Value at(int horizon, State s, int budget) const;
  // Value of taking `a` (do-nothing or replace) first and acting optimally
  // after. Requires horizon >= 1; replace requires budget >= 1.
  Value first_action_value(int horizon, State s, int budget, Action a) const;

  const SpecialMDP& mdp() const { return mdp_; }
  int max_horizon() const { return max_horizon_; }
  int max_budget() const { return max_budget_; }

 private:
  std::size_t index(int horizon, State s, int budget) const;

  SpecialMDP mdp_;
  int max_horizon_;
  int max_budget_;
  std::vector<Value> values_;
};

Value exact_value(const SpecialMDP& mdp, int horizon, State s0, int budget);

// Exhaustive search over every {D, M}^H action sequence; independent of the
// Bellman recursion. Refuses horizons above kBruteForceMaxHorizon.
inline constexpr int kBruteForceMaxHorizon = 20;
Value brute_force_value(const SpecialMDP& mdp, int horizon, State s0, int budget);

// Budget beyond which the value is predicted flat: floor(H/2) for s0 > d0,
// ceil(H/2) for 0 < s0 <= d0, 0 for s0 = 0.
int saturation_budget(State s0, State d0, int horizon);

struct TheoryGrid {
  State s_max_lo = 1, s_max_hi = 6;
  State d0_lo = 1, d0_hi = 3;
  int horizon_lo = 0, horizon_hi = 12;
  int budget_lo = 0, budget_hi = 10;
};

struct TheoryCheckOptions {
  // Apply the floor/ceil flatness thresholds even when s_max <= d0, where a
  // replaced component cannot survive a single decay step and every step
  // needs its own replacement.
  bool strict_flatness = false;
};

struct TheoryViolation {
  std::string property;
  State s_max = 0;
  State d0 = 0;
  int horizon = 0;
  State s0 = 0;
  int budget = 0;
  std::string detail;
};

struct TheoryReport {
  std::vector<TheoryViolation> violations;
  std::int64_t points_checked = 0;
  // Per-property count of assertions evaluated.
  std::int64_t monotone_state_checks = 0;
  std::int64_t monotone_budget_checks = 0;
  std::int64_t concavity_checks = 0;
  std::int64_t do_nothing_first_checks = 0;
  std::int64_t replace_first_checks = 0;
  std::int64_t flatness_checks = 0;
  // Points with s_max <= d0, where flatness is checked against the
  // every-step replacement threshold H instead of floor/ceil(H/2).
  std::int64_t single_step_regime_points = 0;
  // Of those, how many would fail the floor/ceil(H/2) threshold.
  std::int64_t half_horizon_threshold_failures = 0;
  // Budget triples where midpoint concavity holds strictly, i.e. the
  // interpolation equality V(b+1) = (V(b) + V(b+2)) / 2 does not hold.
  std::int64_t strict_midpoint_points = 0;

  bool ok() const { return violations.empty(); }
};

// Checks, over every grid point: monotonicity in s and in b, discrete
// concavity in b, the optimal first action in both regimes (ties pass), and
// flatness beyond the saturation budget.
TheoryReport check_theory(const TheoryGrid& grid,
                          const TheoryCheckOptions& options = {});

}  // namespace bpomdp

#endif  // BPOMDP_EXACT_SOLVER_HPP_
