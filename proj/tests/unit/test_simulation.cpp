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
#include "bpomdp/scenario.hpp"
#include "bpomdp/simulation.hpp"
#include "doctest.h"

using namespace bpomdp;

namespace {

PolicySpec pomcp(int sims) {
  PolicySpec p;
  p.planner.n_simulations = sims;
  p.n_particles = 200;
  return p;
}

PolicySpec baseline() {
  PolicySpec p;
  p.kind = PolicyKind::kBaseline;
  return p;
}

ComponentModel boiler_like() {
  return make_component("boiler", 100, BinomialDecay{6, 0.5}, {0, 1, 45}).model;
}

}  // namespace

TEST_CASE("most probable next state") {
  const ComponentModel m("m", 4,
                         {{0.5, 0.5}, {0.2, 0.4, 0.4}, {0.0, 0.0, 0.5, 0.5},
                          {0.1, 0.2, 0.3, 0.4, 0.0}},
                         {});
  CHECK(most_probable_next(m, 4) == 3);
  CHECK(most_probable_next(m, 0) == 0);
  CHECK(most_probable_next(m, 1) == 0);
  CHECK(most_probable_next(m, 1, TieBreak::kHigher) == 1);
  CHECK(most_probable_next(m, 2) == 1);
  CHECK(most_probable_next(m, 2, TieBreak::kHigher) == 2);
  CHECK(most_probable_next(ComponentModel::deterministic("d", 9, 2, {}), 7) == 5);
}

TEST_CASE("baseline decisions") {
  const ComponentModel m = ComponentModel::deterministic("d", 100, 1, {0, 1, 45});
  const BaselinePolicyConfig cfg;
  CHECK(baseline_step(m, 50, 5, 0, 100, cfg) == Action::kInspect);
  CHECK(baseline_step(m, 50, 0, 0, 100, cfg) == Action::kDoNothing);
  CHECK(baseline_step(m, 14, 3, 0, 100, cfg) == Action::kReplace);
  CHECK(baseline_step(m, 15, 3, 0, 100, cfg) == Action::kDoNothing);
  CHECK(baseline_step(m, 14, 5, 0, 100, cfg) == Action::kInspect);
  CHECK(baseline_step(m, 14, 5, 100, 100, cfg) == Action::kDoNothing);
  CHECK(baseline_step(m, 14, 3, 60, 100, cfg) == Action::kDoNothing);
  BaselinePolicyConfig bad;
  bad.inspect_every = 0;
  CHECK_THROWS_AS(bad.validate(m), DomainError);
  bad = {};
  bad.replace_threshold = 101;
  CHECK_THROWS_AS(bad.validate(m), DomainError);
}

TEST_CASE("trivial episodes") {
  const ComponentModel det = ComponentModel::deterministic("d", 20, 1, {0, 1, 5});
  for (const PolicySpec& p : {pomcp(100), baseline()}) {
    CHECK(run_episode(det, p, 20, 0, 100, 1).ttf() == 0);
    const EpisodeTrace t = run_episode(det, p, 0, 5, 100, 1);
    CHECK(t.ttf() == 5);
    CHECK(t.failed);
    CHECK(t.total_cost() == 0);
  }
  const EpisodeTrace none = run_episode(det, baseline(), 0, 5, 0, 1);
  CHECK(none.ttf() == 1);
  CHECK(none.horizon_end);
}

TEST_CASE("budget safety, ttf and reward agree") {
  const ComponentModel m = boiler_like();
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (Cost budget : {0, 1, 44, 45, 91, 500}) {
      for (const PolicySpec& p : {pomcp(150), baseline()}) {
        const EpisodeTrace t = run_episode(m, p, budget, 100, 60, seed);
        CHECK_NOTHROW(check_budget_safety(t));
        CHECK(t.ttf() == t.total_reward());
        CHECK(t.total_cost() <= budget);
        for (const auto& s : t.steps) {
          CHECK(s.reward == (s.next_state > 0 ? 1 : 0));
          if (s.action != Action::kDoNothing) CHECK(s.obs.state() == s.next_state);
        }
      }
    }
  }
}

TEST_CASE("safety check catches overspending") {
  EpisodeTrace t;
  t.component = "x";
  t.budget = 5;
  t.steps.push_back(TraceStep{0, 3, 3, Action::kReplace, Observation::exact(9), 9, 6, 6, 1});
  CHECK_THROWS_AS(check_budget_safety(t), BudgetViolation);
  t.budget = 10;
  t.steps.push_back(TraceStep{1, 9, 9, Action::kDoNothing, Observation::null(), 8, 0, 4, 1});
  CHECK_THROWS_AS(check_budget_safety(t), BudgetViolation);
}

TEST_CASE("zero budget baseline equals the pure decay chain") {
  const ComponentModel m = boiler_like();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const EpisodeTrace t = run_episode(m, baseline(), 0, 100, 100, seed);
    for (const auto& step : t.steps) CHECK(step.action == Action::kDoNothing);
    // Replay the chain with the trace's own transitions.
    State s = 100;
    int alive = 1;
    for (const auto& step : t.steps) {
      CHECK(m.decay_prob(s, step.next_state) > 0.0);
      s = step.next_state;
      alive += s > 0;
    }
    CHECK(alive == t.ttf());
  }
}

TEST_CASE("common random numbers across policies") {
  const ComponentModel m = boiler_like();
  const EpisodeTrace a = run_episode(m, baseline(), 0, 100, 100, 9);
  const EpisodeTrace b = run_episode(m, pomcp(50), 0, 100, 100, 9);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].next_state == b.steps[i].next_state);
  }
}

TEST_CASE("episodes are reproducible") {
  const ComponentModel m = boiler_like();
  const EpisodeTrace a = run_episode(m, pomcp(200), 120, 100, 40, 3);
  const EpisodeTrace b = run_episode(m, pomcp(200), 120, 100, 40, 3);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].action == b.steps[i].action);
    CHECK(a.steps[i].next_state == b.steps[i].next_state);
  }
}

TEST_CASE("pomcp beats the baseline on a boiler-like component") {
  const ComponentModel m = boiler_like();
  double pomcp_total = 0.0, base_total = 0.0;
  const int seeds = 20;
  for (int k = 0; k < seeds; ++k) {
    const auto seed = episode_seed(11, 0, k);
    pomcp_total += run_episode(m, pomcp(300), 100, 100, 100, seed).ttf();
    base_total += run_episode(m, baseline(), 100, 100, 100, seed).ttf();
  }
  CHECK(pomcp_total / seeds > base_total / seeds);
}

TEST_CASE("evaluation") {
  Scenario sc;
  sc.name = "dead";
  sc.total_budget = 10;
  sc.horizon = 20;
  sc.components.push_back(make_component("a", 20, DeterministicDecay{1}, {0, 1, 2}, 0));
  sc.components.push_back(make_component("b", 20, DeterministicDecay{1}, {0, 1, 2}, 0));
  AllocationPlan plan;
  plan.components = {"a", "b"};
  plan.budgets = {5, 5};
  plan.total_budget = 10;
  const EvaluationResult dead = evaluate(sc, plan, baseline(), 3, 20, 1);
  CHECK(dead.overall_ttf == 0.0);
  CHECK(dead.traces.size() == 6);

  sc.components[0].initial_state = 5;
  sc.components[1].initial_state = 3;
  const EvaluationResult live = evaluate(sc, plan, baseline(), 2, 20, 1);
  REQUIRE(live.components.size() == 2);
  CHECK(live.overall_ttf == live.components[0].mean_ttf + live.components[1].mean_ttf);

  const EvaluationResult again = evaluate(sc, plan, baseline(), 2, 20, 1);
  CHECK(again.overall_ttf == live.overall_ttf);

  AllocationPlan missing = plan;
  missing.components = {"a"};
  missing.budgets = {10};
  CHECK_THROWS_AS(evaluate(sc, missing, baseline(), 1, 20, 1), ScenarioError);

  CHECK(episode_seed(1, 0, 0) != episode_seed(1, 1, 0));
  CHECK(episode_seed(1, 0, 0) != episode_seed(1, 0, 1));
}
