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

// Closed-loop simulation of one component under a maintenance policy: the
// true condition stays hidden from the policy, which only sees observations
// and its own cumulative cost.

#ifndef BPOMDP_SIMULATION_HPP_
#define BPOMDP_SIMULATION_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bpomdp/model.hpp"
#include "bpomdp/planner.hpp"

namespace bpomdp {

enum class TieBreak { kLower, kHigher };

struct BaselinePolicyConfig {
  int inspect_every = 5;
  State replace_threshold = 15;
  TieBreak tie_break = TieBreak::kLower;

  void validate(const ComponentModel& model) const;
};

enum class PolicyKind { kPomcp, kBaseline };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kPomcp;
  // total_budget and horizon_remaining are filled in per step.
  PlannerConfig planner;
  BaselinePolicyConfig baseline;
  std::size_t n_particles = 1000;
};

struct TraceStep {
  int t = 0;
  State state = 0;         // true condition before the action
  double belief_mean = 0;  // policy's estimate of the condition
  Action action = Action::kDoNothing;
  Observation obs = Observation::null();
  State next_state = 0;
  Cost incurred = 0;
  Cost cumulative = 0;
  int reward = 0;
};

struct EpisodeTrace {
  std::string component;
  PolicyKind policy = PolicyKind::kPomcp;
  Cost budget = 0;
  std::uint64_t seed = 0;
  State s0 = 0;
  int horizon = 0;
  // Reward for the initial time point (1 when s0 > 0).
  int initial_reward = 0;
  std::vector<TraceStep> steps;
  bool failed = false;
  bool budget_limited = false;  // stopped because do-nothing became unaffordable
  bool horizon_end = false;

  // Time points t = 0..H with a live condition; equals total_reward().
  int ttf() const;
  int total_reward() const;
  Cost total_cost() const { return steps.empty() ? 0 : steps.back().cumulative; }
};

// argmax_next p(s, next); ties go to the lower state unless configured
// otherwise.
State most_probable_next(const ComponentModel& model, State s,
                         TieBreak tie = TieBreak::kLower);

// Inspect at t = k, 2k, ... (the start state is known), otherwise replace when
// the estimate is below the threshold, otherwise do nothing; unaffordable
// choices fall through.
Action baseline_step(const ComponentModel& model, State estimate, int t, Cost c,
                     Cost budget, const BaselinePolicyConfig& config);

// Runs one episode from s0 for up to `horizon` transitions. The environment
// draws one uniform per step from a stream derived from `seed` alone, so
// episodes sharing a seed see common random numbers across policies and
// budgets. Throws BudgetViolation if the policy ever picks an action that does
// not fit.
EpisodeTrace run_episode(const ComponentModel& model, const PolicySpec& policy,
                         Cost budget, State s0, int horizon, std::uint64_t seed);

// Throws BudgetViolation when any step's cumulative cost is decreasing or
// exceeds the trace's budget.
void check_budget_safety(const EpisodeTrace& trace);

}  // namespace bpomdp

#endif  // BPOMDP_SIMULATION_HPP_
