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

#include <array>
#include <numeric>

#include "bpomdp/model.hpp"
#include "bpomdp/rng.hpp"
#include "doctest.h"

using namespace bpomdp;

namespace {

// s_max = 5, row for s = 2 is [0.1, 0.6, 0.3]; other rows decay by one.
ComponentModel small_model(ActionCosts costs = {0, 1, 45}) {
  std::vector<std::vector<double>> rows;
  for (State s = 1; s <= 5; ++s) {
    std::vector<double> row(static_cast<std::size_t>(s) + 1, 0.0);
    row[s - 1] = 1.0;
    rows.push_back(row);
  }
  rows[1] = {0.1, 0.6, 0.3};
  return ComponentModel("small", 5, rows, costs);
}

}  // namespace

TEST_CASE("decay rows are validated with the row named") {
  CHECK_THROWS_WITH_AS(ComponentModel("bad", 2, {{0.5, 0.5}, {0.5, 0.4, 0.0}}, {}),
                       doctest::Contains("row for state 2"), DomainError);
  CHECK_THROWS_AS(ComponentModel("short", 2, {{1.0}}, {}), DomainError);
  CHECK_THROWS_AS(ComponentModel("neg", 1, {{1.5, -0.5}}, {}), DomainError);
  CHECK_THROWS_AS(ComponentModel("cost", 1, {{1.0, 0.0}}, {0, -1, 1}), DomainError);
  CHECK_NOTHROW(ComponentModel("ok", 1, {{0.25, 0.75}}, {}));
}

TEST_CASE("transition rows sum to one and 0 absorbs") {
  const ComponentModel m = small_model();
  for (State s = 0; s <= m.s_max(); ++s) {
    for (Action a : kAllActions) {
      double total = 0.0;
      for (State n = 0; n <= m.s_max(); ++n) total += transition_prob(m, s, a, n);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(transition_prob(m, 0, Action::kReplace, 0) == 1.0);
  CHECK(transition_prob(m, 4, Action::kReplace, 5) == 1.0);
  CHECK(transition_prob(m, 3, Action::kDoNothing, 4) == 0.0);
  CHECK(transition_prob(m, 2, Action::kInspect, 1) == doctest::Approx(0.6));
  CHECK_THROWS_AS(transition_prob(m, 6, Action::kDoNothing, 0), DomainError);
}

TEST_CASE("observations") {
  const ComponentModel m = ComponentModel::deterministic("d", 10, 1, {});
  CHECK(observe(m, 7, Action::kInspect) == Observation::exact(7));
  CHECK(observe(m, 7, Action::kDoNothing).is_null());
  CHECK(observe(m, 0, Action::kReplace) == Observation::exact(0));
  CHECK(Observation::null().key() == -1);
  CHECK(Observation::exact(3).state() == 3);
}

TEST_CASE("action costs and feasibility") {
  const ComponentModel boiler = small_model({0, 1, 45});
  CHECK(action_cost(boiler, Action::kReplace) == 45);
  CHECK(action_cost(boiler, Action::kInspect) == 1);
  CHECK(action_cost(boiler, Action::kDoNothing) == 0);

  CHECK(feasible_actions(boiler, 499, 500) ==
        ActionSet{Action::kDoNothing, Action::kInspect});
  CHECK(feasible_actions(boiler, 0, 0) == ActionSet{Action::kDoNothing});
  CHECK(feasible_actions(boiler, 455, 500) ==
        ActionSet{Action::kDoNothing, Action::kInspect, Action::kReplace});
  CHECK_THROWS_AS(feasible_actions(boiler, 501, 500), BudgetViolation);
  CHECK_FALSE(budget_exhausted(boiler, 500, 500));

  const ComponentModel pricey = small_model({2, 3, 5});
  CHECK(feasible_actions(pricey, 9, 10) == ActionSet{Action::kDoNothing});
  CHECK(budget_exhausted(pricey, 9, 10));
}

TEST_CASE("action set order") {
  const ActionSet set{Action::kReplace, Action::kDoNothing};
  CHECK(set.size() == 2);
  CHECK(set.nth(0) == Action::kDoNothing);
  CHECK(set.nth(1) == Action::kReplace);
  CHECK_FALSE(set.contains(Action::kInspect));
  CHECK(parse_action("Q") == Action::kInspect);
  CHECK(parse_action("replace") == Action::kReplace);
  CHECK(to_string(Action::kDoNothing) == "D");
  CHECK_THROWS_AS(parse_action("X"), DomainError);
}

TEST_CASE("step semantics") {
  const ComponentModel m = small_model({0, 1, 45});
  Rng rng(1);
  const StepResult r = step(m, {4, 10}, Action::kReplace, 100, rng);
  CHECK(r.next == BState{5, 55});
  CHECK(r.obs == Observation::exact(5));
  CHECK(r.reward == 1);

  const StepResult dead = step(m, {0, 3}, Action::kDoNothing, 100, rng);
  CHECK(dead.next == BState{0, 3});
  CHECK(dead.obs.is_null());
  CHECK(dead.reward == 0);

  const StepResult dead_m = step(m, {0, 3}, Action::kReplace, 100, rng);
  CHECK(dead_m.next == BState{0, 48});
  CHECK(dead_m.reward == 0);

  CHECK_THROWS_AS(step(m, {3, 60}, Action::kReplace, 100, rng), BudgetViolation);
}

TEST_CASE("step frequencies match the decay row") {
  const ComponentModel m = small_model();
  Rng rng(2024);
  std::array<int, 3> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const StepResult r = step(m, {2, 0}, Action::kDoNothing, 0, rng);
    ++counts[static_cast<std::size_t>(r.next.s)];
    CHECK(r.obs.is_null());
  }
  CHECK(std::abs(counts[0] / double(n) - 0.1) <= 0.01);
  CHECK(std::abs(counts[1] / double(n) - 0.6) <= 0.01);
  CHECK(std::abs(counts[2] / double(n) - 0.3) <= 0.01);
}

TEST_CASE("inspect observes the true next state") {
  const ComponentModel m = small_model();
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const State s = static_cast<State>(rng.below(6));
    const StepResult r = step(m, {s, 0}, Action::kInspect, 1, rng);
    CHECK(r.obs.state() == r.next.s);
  }
}

TEST_CASE("sample_decay skips zero-probability states") {
  const ComponentModel m("gap", 2, {{1.0, 0.0}, {0.5, 0.0, 0.5}}, {});
  for (double u : {0.0, 0.25, 0.4999, 0.5, 0.75, 0.999999}) {
    CHECK(m.sample_decay(2, u) != 1);
  }
}

TEST_CASE("belief updates") {
  const ComponentModel m = ComponentModel::deterministic("d", 10, 1, {0, 1, 5});
  Rng rng(3);
  Belief b{{3, 4, 5}, 0};
  const Belief q = update_belief(m, b, Action::kInspect, Observation::exact(4), rng);
  CHECK(q.particles == std::vector<State>{4, 4, 4});
  CHECK(q.c == 1);

  const Belief r = update_belief(m, Belief::point(10, 0, 4), Action::kReplace,
                                 Observation::exact(10), rng);
  CHECK(r.particles == std::vector<State>(4, 10));
  CHECK(r.c == 5);

  const Belief d = update_belief(m, Belief::point(2, 0, 5), Action::kDoNothing,
                                 Observation::null(), rng);
  CHECK(d.particles == std::vector<State>(5, 1));

  CHECK_THROWS_AS(update_belief(m, b, Action::kDoNothing, Observation::exact(3), rng),
                  DomainError);
  CHECK_THROWS_AS(update_belief(m, b, Action::kInspect, Observation::null(), rng),
                  DomainError);
  CHECK_THROWS_AS(update_belief(m, Belief{}, Action::kDoNothing, Observation::null(), rng),
                  DomainError);
}

TEST_CASE("null updates stay in the decay support") {
  const ComponentModel m = small_model();
  Rng rng(9);
  Belief b{{2, 2, 2, 2, 5, 5, 0}, 0};
  for (int i = 0; i < 50; ++i) {
    const Belief n = update_belief(m, b, Action::kDoNothing, Observation::null(), rng);
    for (std::size_t k = 0; k < b.particles.size(); ++k) {
      CHECK(transition_prob(m, b.particles[k], Action::kDoNothing, n.particles[k]) > 0.0);
    }
  }
}

TEST_CASE("belief summaries") {
  const Belief b{{0, 2, 2, 3}, 7};
  CHECK(b.mean() == doctest::Approx(1.75));
  CHECK(b.mode() == 2);
  CHECK(b.alive_fraction() == doctest::Approx(0.75));
  CHECK(Belief{{1, 3}, 0}.mode() == 1);
}

TEST_CASE("derived seeds are stable and distinct") {
  CHECK(derive_seed(42, {1, 2}) == derive_seed(42, {1, 2}));
  CHECK(derive_seed(42, {1, 2}) != derive_seed(42, {2, 1}));
  CHECK(derive_seed(42, {}) != derive_seed(43, {}));
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng r(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
  }
}
