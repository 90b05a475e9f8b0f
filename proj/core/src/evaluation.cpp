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

#include "bpomdp/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace bpomdp {

std::uint64_t episode_seed(std::uint64_t master_seed, std::size_t index, int episode) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(index),
                                   static_cast<std::uint64_t>(episode)});
}

EvaluationResult evaluate(const Scenario& scenario, const AllocationPlan& plan,
                          const PolicySpec& policy, int n_seeds, int horizon,
                          std::uint64_t master_seed) {
  if (n_seeds < 1) throw DomainError("evaluate needs n_seeds >= 1");
  if (plan.components.size() != plan.budgets.size()) {
    throw DomainError("allocation plan is malformed");
  }
  EvaluationResult result;
  for (std::size_t i = 0; i < scenario.components.size(); ++i) {
    const ComponentSpec& spec = scenario.components[i];
    const auto it = std::find(plan.components.begin(), plan.components.end(),
                              spec.model.name());
    if (it == plan.components.end()) {
      throw ScenarioError("allocation plan has no budget for '" + spec.model.name() + "'");
    }
    const Cost budget = plan.budgets[static_cast<std::size_t>(it - plan.components.begin())];

    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < n_seeds; ++k) {
      EpisodeTrace trace = run_episode(spec.model, policy, budget, spec.initial_state,
                                       horizon, episode_seed(master_seed, i, k));
      const double ttf = trace.ttf();
      sum += ttf;
      sum_sq += ttf * ttf;
      result.traces.push_back(std::move(trace));
    }
    const double n = n_seeds;
    const double mean = sum / n;
    const double var = n_seeds > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    result.components.push_back(
        ComponentMetrics{spec.model.name(), policy.kind, budget, mean, std::sqrt(var), n_seeds});
    result.overall_ttf += mean;
  }
  return result;
}

}  // namespace bpomdp
