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

// Single-component maintenance POMDP and its budget-augmented form.
//
// A component's condition index lives on {0, ..., s_max}; 0 is failure and is
// absorbing. Three actions are available: do nothing (the condition decays
// stochastically), inspect (same decay, but the next state is observed
// exactly) and replace (deterministic jump to s_max, also observed). The
// budgeted state pairs the hidden condition with the fully observable
// cumulative cost; an action is only available while it fits the budget.

#ifndef BPOMDP_MODEL_HPP_
#define BPOMDP_MODEL_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpomdp/rng.hpp"

namespace bpomdp {

using State = int;
using Cost = std::int64_t;

// Reward collected for every time point the component is alive.
inline constexpr int kAliveReward = 1;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An action was taken that does not fit the remaining budget, or a trajectory
// was found whose cumulative cost exceeds its budget.
class BudgetViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Action : std::uint8_t { kDoNothing = 0, kInspect = 1, kReplace = 2 };

inline constexpr std::array<Action, 3> kAllActions = {
    Action::kDoNothing, Action::kInspect, Action::kReplace};

std::string_view to_string(Action a);
// Accepts "D"/"Q"/"M" and the long names "do-nothing"/"inspect"/"replace".
Action parse_action(std::string_view text);

// Small set of actions backed by a bitmask.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr ActionSet(std::initializer_list<Action> actions) {
    for (Action a : actions) insert(a);
  }

  constexpr void insert(Action a) { bits_ |= bit(a); }
  constexpr bool contains(Action a) const { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const {
    return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1);
  }
  // i-th member in D, Q, M order; i < size().
  Action nth(int i) const;

  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  static constexpr std::uint8_t bit(Action a) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(a));
  }
  std::uint8_t bits_ = 0;
};

// Either the exact next state (after inspect or replace) or the
// uninformative null observation (after do-nothing).
class Observation {
 public:
  static constexpr Observation null() { return Observation(kNullKey); }
  static Observation exact(State s);

  constexpr bool is_null() const { return key_ == kNullKey; }
  // Observed state; requires !is_null().
  State state() const;
  // Dense key: -1 for null, the state otherwise.
  constexpr int key() const { return key_; }

  friend constexpr bool operator==(Observation, Observation) = default;

 private:
  static constexpr int kNullKey = -1;
  constexpr explicit Observation(int key) : key_(key) {}
  int key_;
};

std::string to_string(Observation o);

struct ActionCosts {
  Cost d = 0;
  Cost q = 0;
  Cost m = 0;
  friend bool operator==(const ActionCosts&, const ActionCosts&) = default;
};

// Immutable description of one component: condition range, decay
// distribution, and action costs. Safe to share across threads.
class ComponentModel {
 public:
  // `decay_rows[s - 1]` is the distribution of the next state under
  // do-nothing from state s, over {0, ..., s}. Throws DomainError naming the
  // offending row when a row has the wrong length, a negative entry, or does
  // not sum to 1 within 1e-9.
  ComponentModel(std::string name, State s_max,
                 std::vector<std::vector<double>> decay_rows,
                 ActionCosts costs);

  // Decay that drops exactly d0 condition points per step, clamped at 0.
  static ComponentModel deterministic(std::string name, State s_max, State d0,
                                      ActionCosts costs);

  const std::string& name() const { return name_; }
  State s_max() const { return s_max_; }
  const ActionCosts& costs() const { return costs_; }
  Cost cost(Action a) const;

  // p(s, next) for the decay transition; 0 outside the support.
  double decay_prob(State s, State next) const;
  // Full decay row for state s, indexed by next state (length s + 1).
  std::span<const double> decay_row(State s) const;
  // Inverse-CDF sample of the decay transition from s given u in [0, 1).
  State sample_decay(State s, double u) const;

  void check_state(State s) const;

  friend bool operator==(const ComponentModel&, const ComponentModel&) = default;

 private:
  std::string name_;
  State s_max_;
  std::vector<std::vector<double>> rows_;  // rows_[s], s = 0..s_max
  std::vector<std::vector<double>> cdf_;
  ActionCosts costs_;
};

// Budgeted state: hidden condition plus observable cumulative cost.
struct BState {
  State s = 0;
  Cost c = 0;
  friend bool operator==(const BState&, const BState&) = default;
};

// Particle approximation of the hidden condition, with the known cost.
struct Belief {
  std::vector<State> particles;
  Cost c = 0;

  // n particles all at s.
  static Belief point(State s, Cost c, std::size_t n);

  bool empty() const { return particles.empty(); }
  double mean() const;
  // Most frequent particle value, lowest state on ties.
  State mode() const;
  // Fraction of particles with a live (non-failed) condition.
  double alive_fraction() const;
};

double transition_prob(const ComponentModel& model, State s, Action a,
                       State next);

Observation observe(const ComponentModel& model, State next, Action a);

Cost action_cost(const ComponentModel& model, Action a);

// Actions whose cost fits the remaining budget. When nothing fits, returns
// {D}; the caller detects that case with budget_exhausted(). Throws
// BudgetViolation if c > budget.
ActionSet feasible_actions(const ComponentModel& model, Cost c, Cost budget);

// True when not even the do-nothing action fits (only possible with cost_d > 0).
bool budget_exhausted(const ComponentModel& model, Cost c, Cost budget);

struct StepResult {
  BState next;
  Observation obs;
  int reward;  // kAliveReward when next.s > 0
};

// Draws the next condition from a caller-supplied uniform `u` in [0, 1).
// Replacement and the absorbing state ignore `u`.
StepResult step_with(const ComponentModel& model, BState current, Action a,
                     Cost budget, double u);

// Generative model of the budgeted process. Throws BudgetViolation when `a`
// does not fit the budget.
StepResult step(const ComponentModel& model, BState current, Action a,
                Cost budget, Rng& rng);

// Monte-Carlo belief update. Exact observations collapse every particle onto
// the observed state; the null observation pushes each particle through the
// decay transition. Throws DomainError for an observation inconsistent with
// the action.
Belief update_belief(const ComponentModel& model, const Belief& belief,
                     Action a, Observation o, Rng& rng);

}  // namespace bpomdp

#endif  // BPOMDP_MODEL_HPP_
