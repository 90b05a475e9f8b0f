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

// Splitting a shared budget across components so that the sum of their
// value-of-budget curves is maximal.

#ifndef BPOMDP_ALLOCATOR_HPP_
#define BPOMDP_ALLOCATOR_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpomdp/model.hpp"
#include "bpomdp/value_curve.hpp"

namespace bpomdp {

enum class AllocationMethod { kGreedy, kBruteForce, kBaselineMttf };

std::string_view to_string(AllocationMethod m);
AllocationMethod parse_allocation_method(std::string_view text);

struct AllocationPlan {
  std::vector<std::string> components;
  std::vector<Cost> budgets;
  double welfare = 0.0;
  AllocationMethod method = AllocationMethod::kGreedy;
  Cost total_budget = 0;
  Cost step = 1;
  double elapsed_ms = 0.0;

  Cost sum() const;
};

// Sum of value_at(curve_i, b_i).
double welfare(std::span<const ValueCurve> curves, std::span<const Cost> budgets);

// Grants `step` units at a time to the component with the largest marginal
// gain (lowest index on ties). Optimal among step-quantized splits when every
// curve is concave. Throws DomainError if B < 0, step < 1, step does not divide
// B, or some curve's grid ends before B.
AllocationPlan allocate_greedy(std::span<const ValueCurve> curves, Cost total_budget,
                               Cost step = 1);

// Exhaustive enumeration of all step-quantized compositions of B; refuses
// instances with more than kBruteForceMaxSplits candidates.
inline constexpr double kBruteForceMaxSplits = 1e7;
AllocationPlan allocate_bruteforce(std::span<const ValueCurve> curves,
                                   Cost total_budget, Cost step = 1);

// Expected number of steps from s_max to failure under pure decay, by
// first-step analysis. Returns +infinity when some live state cannot decay.
double mttf(const ComponentModel& model);

// Budget proportional to cost_m / MTTF with largest-remainder rounding so the
// parts sum to B exactly. Components with infinite MTTF get zero weight; all
// zero weights fall back to an equal split. Welfare is left at 0.
AllocationPlan allocate_baseline(std::span<const ComponentModel> models,
                                 Cost total_budget);

// Same, with welfare evaluated on the given curves (matched by position).
AllocationPlan allocate_baseline(std::span<const ComponentModel> models,
                                 std::span<const ValueCurve> curves,
                                 Cost total_budget);

// Largest-remainder apportionment of `total` proportional to `weights`.
std::vector<Cost> apportion(std::span<const double> weights, Cost total);

// gcd of every positive action cost, at least 1.
Cost default_step(std::span<const ComponentModel> models);

}  // namespace bpomdp

#endif  // BPOMDP_ALLOCATOR_HPP_
