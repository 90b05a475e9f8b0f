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

#include "bpomdp/value_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bpomdp {

void ValueCurve::validate() const {
  if (grid.empty() || grid.front() != 0) {
    throw DomainError("value curve grid must start at 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw DomainError("value curve grid must be strictly increasing");
    }
  }
  if (raw_values.size() != grid.size() || std_errors.size() != grid.size() ||
      values.size() != grid.size()) {
    throw DomainError("value curve arrays must match the grid length");
  }
}

PointEstimate estimate_point(const ComponentModel& model, Cost budget, State s0,
                             int horizon, const PolicySpec& policy,
                             int n_episodes, std::uint64_t seed) {
  if (budget < 0) throw DomainError("budget must be nonnegative");
  if (n_episodes < 1) throw DomainError("n_episodes must be >= 1");
  std::vector<double> totals;
  totals.reserve(static_cast<std::size_t>(n_episodes));
  for (int k = 0; k < n_episodes; ++k) {
    const EpisodeTrace trace =
        run_episode(model, policy, budget, s0, horizon,
                    derive_seed(seed, {static_cast<std::uint64_t>(k)}));
    totals.push_back(trace.total_reward());
  }
  const double n = static_cast<double>(n_episodes);
  const double mean = std::accumulate(totals.begin(), totals.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : totals) ss += (x - mean) * (x - mean);
  const double std_error = n_episodes > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return PointEstimate{mean, std_error};
}

ValueCurve sweep(const ComponentModel& model, std::span<const Cost> grid,
                 State s0, int horizon, const PolicySpec& policy,
                 int n_episodes, std::uint64_t seed) {
  ValueCurve curve;
  curve.component = model.name();
  curve.grid.assign(grid.begin(), grid.end());
  curve.n_episodes = n_episodes;
  for (Cost b : curve.grid) {
    const PointEstimate p =
        estimate_point(model, b, s0, horizon, policy, n_episodes, seed);
    curve.raw_values.push_back(p.mean);
    curve.std_errors.push_back(p.std_error);
  }
  curve.values = curve.raw_values;
  curve.validate();
  return curve;
}

std::vector<Cost> default_grid(const ComponentModel& model, Cost total_budget,
                               int horizon, const GridOptions& options) {
  if (total_budget < 0 || horizon < 0) {
    throw DomainError("default_grid needs a nonnegative budget and horizon");
  }
  const Cost cq = model.costs().q;
  const Cost cm = model.costs().m;
  const Cost half = (horizon + 1) / 2;
  const Cost cap = std::min(total_budget, (cm + cq) > 0 ? half * (cm + cq) : total_budget);
  Cost multiples = half;
  if (options.max_replacements >= 0) multiples = std::min<Cost>(multiples, options.max_replacements);

  std::vector<Cost> points = {0, cq, 2 * cq};
  for (Cost k = 1; k <= multiples; ++k) points.push_back(k * cm);
  std::erase_if(points, [cap](Cost b) { return b < 0 || b > cap; });
  const Cost last = *std::max_element(points.begin(), points.end());
  for (int j = 1; j <= options.tail_points; ++j) {
    points.push_back(last + (cap - last) * j / options.tail_points);
  }
  if (total_budget > cap) points.push_back(total_budget);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<double> isotonic_fit(std::span<const double> y) {
  struct Block {
    double sum;
    double count;
    double mean() const { return sum / count; }
  };
  std::vector<Block> blocks;
  blocks.reserve(y.size());
  for (double v : y) {
    blocks.push_back(Block{v, 1.0});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::vector<double> fit;
  fit.reserve(y.size());
  for (const Block& b : blocks) {
    fit.insert(fit.end(), static_cast<std::size_t>(b.count), b.mean());
  }
  return fit;
}

std::vector<double> concave_majorant(std::span<const Cost> x,
                                     std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("concave_majorant: size mismatch");
  const std::size_t n = x.size();
  if (n <= 2) return {y.begin(), y.end()};
  // Upper hull by monotone chain; x is strictly increasing.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (static_cast<double>(x[b] - x[a])) * (y[i] - y[a]) -
                           (y[b] - y[a]) * static_cast<double>(x[i] - x[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<double> out(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t a = hull[h];
    const std::size_t b = hull[h + 1];
    for (std::size_t i = a; i <= b; ++i) {
      const double t = static_cast<double>(x[i] - x[a]) /
                       static_cast<double>(x[b] - x[a]);
      out[i] = i == b ? y[b] : y[a] + t * (y[b] - y[a]);
    }
  }
  return out;
}

ValueCurve repair(ValueCurve curve) {
  curve.values = curve.raw_values;
  curve.validate();
  const std::vector<double> monotone = isotonic_fit(curve.raw_values);
  curve.values = concave_majorant(curve.grid, monotone);

  double pooled = 0.0;
  for (double se : curve.std_errors) pooled += se * se;
  pooled = std::sqrt(pooled / static_cast<double>(curve.std_errors.size()));

  curve.adjustment_ss = 0.0;
  curve.flagged.clear();
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    const double adj = std::abs(curve.values[i] - curve.raw_values[i]);
    curve.adjustment_ss += adj * adj;
    if (adj > 3.0 * pooled && adj > 1e-12) curve.flagged.push_back(i);
  }
  return curve;
}

bool is_monotone_concave(const ValueCurve& curve, double tol) {
  const auto& g = curve.grid;
  const auto& v = curve.values;
  double previous_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] < v[i] - tol) return false;
    const double slope = (v[i + 1] - v[i]) / static_cast<double>(g[i + 1] - g[i]);
    if (slope > previous_slope + tol) return false;
    previous_slope = slope;
  }
  return true;
}

double value_at(const ValueCurve& curve, Cost budget) {
  const auto& g = curve.grid;
  if (g.empty() || budget < 0 || budget > g.back()) {
    throw DomainError("budget " + std::to_string(budget) +
                      " outside the curve grid for '" + curve.component + "'");
  }
  const auto it = std::lower_bound(g.begin(), g.end(), budget);
  const auto k = static_cast<std::size_t>(it - g.begin());
  if (*it == budget) return curve.values[k];
  const double t = static_cast<double>(budget - g[k - 1]) /
                   static_cast<double>(g[k] - g[k - 1]);
  return curve.values[k - 1] + t * (curve.values[k] - curve.values[k - 1]);
}

}  // namespace bpomdp
