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

// Microbenchmarks for the hot paths: exact DP, one POMCP decision, greedy
// allocation, and curve repair.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bpomdp/bpomdp.hpp"

namespace {

using namespace bpomdp;

void BM_ExactValueTable(benchmark::State& state) {
  const SpecialMDP mdp{6, 2, 1};
  const int h = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ValueTable table(mdp, h, h);
    benchmark::DoNotOptimize(table.at(h, 6, h / 2));
  }
}
BENCHMARK(BM_ExactValueTable)->Arg(12)->Arg(100)->Arg(400);

void BM_BruteForce(benchmark::State& state) {
  const SpecialMDP mdp{6, 2, 1};
  const int h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_value(mdp, h, 6, h / 2));
}
BENCHMARK(BM_BruteForce)->Arg(8)->Arg(12)->Arg(16);

void BM_PlannerDecision(benchmark::State& state) {
  const Scenario sc = generate_scenario(building_generator(), 42);
  const auto& comp = sc.components[sc.index_of("boiler")];
  PlannerConfig cfg;
  cfg.n_simulations = static_cast<int>(state.range(0));
  cfg.total_budget = 135;
  cfg.horizon_remaining = 100;
  const Belief belief = Belief::point(comp.initial_state, 0, 1000);
  Rng rng(1);
  for (auto _ : state) {
    Planner planner(comp.model, cfg);
    benchmark::DoNotOptimize(planner.search(belief, rng).action);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PlannerDecision)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BeliefUpdate(benchmark::State& state) {
  const Scenario sc = generate_scenario(building_generator(), 42);
  const auto& model = sc.components[0].model;
  const Belief belief = Belief::point(model.s_max(), 0, static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        update_belief(model, belief, Action::kDoNothing, Observation::null(), rng));
  }
}
BENCHMARK(BM_BeliefUpdate)->Arg(100)->Arg(1000);

// Concave curves on a sparse grid up to B, saturating at different budgets.
std::vector<ValueCurve> synthetic_curves(int n, Cost budget) {
  std::vector<ValueCurve> curves;
  for (int i = 0; i < n; ++i) {
    ValueCurve c;
    c.component = "c" + std::to_string(i);
    const Cost sat = 200 + 100 * i;
    for (Cost b = 0; b <= sat; b += 25) {
      c.grid.push_back(b);
      const double x = static_cast<double>(b) / static_cast<double>(sat);
      c.values.push_back(30.0 + 71.0 * (1.0 - (1.0 - x) * (1.0 - x)));
    }
    c.grid.push_back(budget);
    c.values.push_back(c.values.back());
    c.raw_values = c.values;
    c.std_errors.assign(c.values.size(), 0.0);
    c.n_episodes = 1;
    curves.push_back(std::move(c));
  }
  return curves;
}

void BM_GreedyAllocation(benchmark::State& state) {
  const auto curves = synthetic_curves(static_cast<int>(state.range(0)), 10000);
  for (auto _ : state) benchmark::DoNotOptimize(allocate_greedy(curves, 10000, 1).welfare);
}
BENCHMARK(BM_GreedyAllocation)->Arg(5)->Arg(10)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Repair(benchmark::State& state) {
  Rng rng(3);
  ValueCurve c;
  c.component = "noisy";
  for (int i = 0; i < state.range(0); ++i) {
    c.grid.push_back(i);
    c.raw_values.push_back(std::sqrt(static_cast<double>(i)) + rng.uniform());
  }
  c.values = c.raw_values;
  c.std_errors.assign(c.grid.size(), 0.1);
  c.n_episodes = 10;
  for (auto _ : state) benchmark::DoNotOptimize(repair(c).values.back());
}
BENCHMARK(BM_Repair)->Arg(32)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
