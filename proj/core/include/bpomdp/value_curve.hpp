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

// Value-of-budget curves: the expected total reward a component collects as
// a function of the budget it is given, estimated by closed-loop simulation on
// a budget grid and then projected onto nondecreasing concave functions.

#ifndef BPOMDP_VALUE_CURVE_HPP_
#define BPOMDP_VALUE_CURVE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bpomdp/model.hpp"
#include "bpomdp/simulation.hpp"

namespace bpomdp {

struct PointEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct ValueCurve {
  std::string component;
  std::vector<Cost> grid;           // strictly increasing, starts at 0
  std::vector<double> raw_values;   // mean total reward per grid point
  std::vector<double> std_errors;
  std::vector<double> values;       // repaired (monotone, concave)
  int n_episodes = 0;
  double adjustment_ss = 0.0;       // sum of squared repair adjustments
  std::vector<std::size_t> flagged; // points adjusted by > 3x pooled stderr

  // Throws DomainError unless the grid starts at 0, increases strictly, and
  // the value arrays match its length.
  void validate() const;
};

// Mean and standard error of total reward over n_episodes closed-loop
// episodes with budget b. Episode k uses seed derive_seed(seed, {k}).
PointEstimate estimate_point(const ComponentModel& model, Cost budget, State s0,
                             int horizon, const PolicySpec& policy,
                             int n_episodes, std::uint64_t seed);

// estimate_point at every grid point; values start equal to raw_values.
// All points share the per-episode seeds so neighbouring budgets are compared
// under common random numbers.
ValueCurve sweep(const ComponentModel& model, std::span<const Cost> grid,
                 State s0, int horizon, const PolicySpec& policy,
                 int n_episodes, std::uint64_t seed);

struct GridOptions {
  int tail_points = 4;  // uniform points between the last replacement multiple and the cap
  // Upper bound on the number of replacement multiples k * cost_m.
  int max_replacements = -1;  // -1: ceil(H / 2)
};

// {0, c_q, 2c_q} u {k c_m : k = 1..ceil(H/2)} u uniform tail, capped at
// min(B, ceil(H/2) (c_m + c_q)); B itself is appended when it lies beyond
// the cap so that the curve covers every admissible budget.
std::vector<Cost> default_grid(const ComponentModel& model, Cost total_budget,
                               int horizon, const GridOptions& options = {});

// Least-squares nondecreasing fit (pool adjacent violators).
std::vector<double> isotonic_fit(std::span<const double> y);

// Least concave majorant of the points (x[i], y[i]) evaluated at x.
std::vector<double> concave_majorant(std::span<const Cost> x,
                                     std::span<const double> y);

// Isotonic fit followed by the least concave majorant; fills values,
// adjustment_ss and flagged.
ValueCurve repair(ValueCurve curve);

// True when values are nondecreasing and slopes between consecutive grid
// points are nonincreasing (within `tol`).
bool is_monotone_concave(const ValueCurve& curve, double tol = 1e-9);

// Piecewise-linear interpolation of the repaired values. Throws DomainError
// for budgets outside [0, grid.back()].
double value_at(const ValueCurve& curve, Cost budget);

}  // namespace bpomdp

#endif  // BPOMDP_VALUE_CURVE_HPP_
