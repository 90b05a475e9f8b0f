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

#include "bpomdp/allocator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace bpomdp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_allocation_inputs(std::span<const ValueCurve> curves, Cost total_budget,
                             Cost step) {
  if (total_budget < 0) throw DomainError("total budget must be nonnegative");
  if (step < 1) throw DomainError("allocation step must be >= 1");
  if (total_budget % step != 0) {
    throw DomainError("allocation step " + std::to_string(step) +
                      " does not divide budget " + std::to_string(total_budget));
  }
  if (curves.empty()) throw DomainError("no curves to allocate over");
  for (const auto& c : curves) {
    if (c.grid.empty() || c.grid.back() < total_budget) {
      throw DomainError("curve for '" + c.component + "' ends before budget " +
                        std::to_string(total_budget) + "; extend its grid");
    }
  }
}

std::vector<std::string> names_of(std::span<const ValueCurve> curves) {
  std::vector<std::string> names;
  for (const auto& c : curves) names.push_back(c.component);
  return names;
}

double binomial(Cost n, Cost k) {
  double r = 1.0;
  for (Cost i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

std::string_view to_string(AllocationMethod m) {
  switch (m) {
    case AllocationMethod::kGreedy:
      return "greedy";
    case AllocationMethod::kBruteForce:
      return "bruteforce";
    case AllocationMethod::kBaselineMttf:
      return "baseline";
  }
  return "?";
}

AllocationMethod parse_allocation_method(std::string_view text) {
  if (text == "greedy") return AllocationMethod::kGreedy;
  if (text == "bruteforce" || text == "brute-force") return AllocationMethod::kBruteForce;
  if (text == "baseline" || text == "baseline-mttf") return AllocationMethod::kBaselineMttf;
  throw DomainError("unknown allocation method '" + std::string(text) + "'");
}

Cost AllocationPlan::sum() const {
  return std::accumulate(budgets.begin(), budgets.end(), Cost{0});
}

double welfare(std::span<const ValueCurve> curves, std::span<const Cost> budgets) {
  if (curves.size() != budgets.size()) throw DomainError("welfare: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < curves.size(); ++i) total += value_at(curves[i], budgets[i]);
  return total;
}

AllocationPlan allocate_greedy(std::span<const ValueCurve> curves, Cost total_budget,
                               Cost step) {
  const auto start = Clock::now();
  check_allocation_inputs(curves, total_budget, step);

  struct Candidate {
    double gain;
    std::size_t index;
  };
  auto worse = [](const Candidate& a, const Candidate& b) {
    return a.gain < b.gain || (a.gain == b.gain && a.index > b.index);
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(worse);

  std::vector<Cost> budgets(curves.size(), 0);
  auto gain_of = [&](std::size_t i) {
    return value_at(curves[i], budgets[i] + step) - value_at(curves[i], budgets[i]);
  };
  if (total_budget > 0) {
    for (std::size_t i = 0; i < curves.size(); ++i) heap.push({gain_of(i), i});
  }
  // Budget from which each curve stays constant to the end of its grid.
  std::vector<Cost> flat_from(curves.size(), 0);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& v = curves[i].values;
    std::size_t k = v.size() - 1;
    while (k > 0 && v[k - 1] == v.back()) --k;
    flat_from[i] = curves[i].grid[k];
  }
  for (Cost granted = 0; granted < total_budget; granted += step) {
    const Candidate best = heap.top();
    heap.pop();
    if (budgets[best.index] >= flat_from[best.index]) {
      // Zero gain now and later, yet still on top: every remaining step
      // would go here, since no other gain can change.
      budgets[best.index] += total_budget - granted;
      break;
    }
    budgets[best.index] += step;
    if (granted + step < total_budget) heap.push({gain_of(best.index), best.index});
  }

  AllocationPlan plan;
  plan.components = names_of(curves);
  plan.budgets = std::move(budgets);
  plan.welfare = welfare(curves, plan.budgets);
  plan.method = AllocationMethod::kGreedy;
  plan.total_budget = total_budget;
  plan.step = step;
  plan.elapsed_ms = elapsed_ms(start);
  return plan;
}

AllocationPlan allocate_bruteforce(std::span<const ValueCurve> curves,
                                   Cost total_budget, Cost step) {
  const auto start = Clock::now();
  check_allocation_inputs(curves, total_budget, step);
  const Cost units = total_budget / step;
  const auto n = static_cast<Cost>(curves.size());
  if (binomial(units + n - 1, n - 1) > kBruteForceMaxSplits) {
    throw DomainError("brute-force allocation refuses more than 1e7 splits");
  }

  std::vector<Cost> current(curves.size(), 0);
  std::vector<Cost> best_budgets;
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, Cost)> enumerate = [&](std::size_t i, Cost left) {
    if (i + 1 == curves.size()) {
      current[i] = left * step;
      const double w = welfare(curves, current);
      if (w > best) {
        best = w;
        best_budgets = current;
      }
      return;
    }
    for (Cost k = left; k >= 0; --k) {
      current[i] = k * step;
      enumerate(i + 1, left - k);
    }
  };
  enumerate(0, units);

  AllocationPlan plan;
  plan.components = names_of(curves);
  plan.budgets = std::move(best_budgets);
  plan.welfare = best;
  plan.method = AllocationMethod::kBruteForce;
  plan.total_budget = total_budget;
  plan.step = step;
  plan.elapsed_ms = elapsed_ms(start);
  return plan;
}

double mttf(const ComponentModel& model) {
  std::vector<double> expected(static_cast<std::size_t>(model.s_max()) + 1, 0.0);
  for (State s = 1; s <= model.s_max(); ++s) {
    const auto row = model.decay_row(s);
    const double stay = row[s];
    if (stay >= 1.0) return std::numeric_limits<double>::infinity();
    double acc = 1.0;
    for (State next = 0; next < s; ++next) acc += row[next] * expected[next];
    expected[s] = acc / (1.0 - stay);
    if (!std::isfinite(expected[s])) return std::numeric_limits<double>::infinity();
  }
  return expected[model.s_max()];
}

std::vector<Cost> apportion(std::span<const double> weights, Cost total) {
  if (total < 0) throw DomainError("cannot apportion a negative total");
  const std::size_t n = weights.size();
  if (n == 0) throw DomainError("cannot apportion over zero parts");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and >= 0");
    sum += w;
  }
  std::vector<double> shares(n);
  if (sum <= 0.0) {
    std::fill(shares.begin(), shares.end(), static_cast<double>(total) / static_cast<double>(n));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      shares[i] = static_cast<double>(total) * weights[i] / sum;
    }
  }
  std::vector<Cost> parts(n);
  Cost assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    parts[i] = static_cast<Cost>(std::floor(shares[i]));
    assigned += parts[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return shares[a] - std::floor(shares[a]) > shares[b] - std::floor(shares[b]);
  });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % n) {
    ++parts[order[k]];
    ++assigned;
  }
  return parts;
}

AllocationPlan allocate_baseline(std::span<const ComponentModel> models,
                                 Cost total_budget) {
  const auto start = Clock::now();
  if (total_budget < 0) throw DomainError("total budget must be nonnegative");
  std::vector<double> weights;
  AllocationPlan plan;
  for (const auto& m : models) {
    const double t = mttf(m);
    weights.push_back(std::isfinite(t) && t > 0.0 ? static_cast<double>(m.costs().m) / t : 0.0);
    plan.components.push_back(m.name());
  }
  plan.budgets = apportion(weights, total_budget);
  plan.method = AllocationMethod::kBaselineMttf;
  plan.total_budget = total_budget;
  plan.step = 1;
  plan.elapsed_ms = elapsed_ms(start);
  return plan;
}

AllocationPlan allocate_baseline(std::span<const ComponentModel> models,
                                 std::span<const ValueCurve> curves,
                                 Cost total_budget) {
  AllocationPlan plan = allocate_baseline(models, total_budget);
  plan.welfare = welfare(curves, plan.budgets);
  return plan;
}

Cost default_step(std::span<const ComponentModel> models) {
  Cost g = 0;
  for (const auto& m : models) {
    for (Action a : kAllActions) {
      if (m.cost(a) > 0) g = std::gcd(g, m.cost(a));
    }
  }
  return std::max<Cost>(g, 1);
}

}  // namespace bpomdp
