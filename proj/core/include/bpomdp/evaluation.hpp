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

// Multi-component evaluation: every component runs under its allocated budget
// and the building-level time to failure is the sum of per-component means.

#ifndef BPOMDP_EVALUATION_HPP_
#define BPOMDP_EVALUATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "bpomdp/allocator.hpp"
#include "bpomdp/scenario.hpp"
#include "bpomdp/simulation.hpp"

namespace bpomdp {

struct ComponentMetrics {
  std::string component;
  PolicyKind policy = PolicyKind::kPomcp;
  Cost budget = 0;
  double mean_ttf = 0.0;
  double std_ttf = 0.0;
  int n_seeds = 0;
};

struct EvaluationResult {
  std::vector<ComponentMetrics> components;
  double overall_ttf = 0.0;
  std::vector<EpisodeTrace> traces;  // component-major, seed-minor
};

// Seed for episode `episode` of component `index`; independent of budget and
// policy so that different allocations are compared on paired streams.
std::uint64_t episode_seed(std::uint64_t master_seed, std::size_t index, int episode);

// Runs n_seeds episodes per scenario component with the budget the plan
// gives it. Throws ScenarioError if the plan misses a component.
EvaluationResult evaluate(const Scenario& scenario, const AllocationPlan& plan,
                          const PolicySpec& policy, int n_seeds, int horizon,
                          std::uint64_t master_seed);

}  // namespace bpomdp

#endif  // BPOMDP_EVALUATION_HPP_
