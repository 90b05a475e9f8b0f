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

// Online Monte-Carlo tree search over action/observation histories for one
// budgeted component (POMCP). The tree is rebuilt on every call; only actions
// that fit the remaining budget at a node are ever expanded.

#ifndef BPOMDP_PLANNER_HPP_
#define BPOMDP_PLANNER_HPP_

#include <array>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "bpomdp/model.hpp"
#include "bpomdp/rng.hpp"

namespace bpomdp {

// Rollout policies beyond the tree. kReplaceAtRisk acts on the simulated
// state: it replaces when the next decay step could reach failure and
// otherwise does nothing.
enum class RolloutPolicy { kRandomFeasible, kAlwaysDoNothing, kReplaceAtRisk };

std::string_view to_string(RolloutPolicy p);
RolloutPolicy parse_rollout_policy(std::string_view text);

struct PlannerConfig {
  int n_simulations = 1000;
  int max_depth = 50;  // tree depth
  double ucb_c = 10.0;
  RolloutPolicy rollout = RolloutPolicy::kReplaceAtRisk;
  // Rollout cutoff in steps from the root; 0 runs rollouts to the end of
  // the episode. Truncated rollouts cannot see what an action costs past
  // the cutoff, which makes cheap inspections look free.
  int rollout_depth = 0;
  // Transitions left in the episode; tree and rollouts are capped by it.
  int horizon_remaining = 100;
  Cost total_budget = 0;
  // Greedy (exploration-free) passes through the finished tree used to
  // estimate the root value; 0 picks n_simulations / 10.
  int value_passes = 0;

  void validate() const;
};

// Thrown by the planner when not even the do-nothing action fits the budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ActionStats {
  Action action;
  int visits = 0;
  double value = 0.0;
};

struct SearchResult {
  Action action = Action::kDoNothing;
  // Estimate of V_H(belief, remaining budget): reward for the current time
  // point plus the mean return of greedy passes through the search tree.
  double root_value = 0.0;
  // Reward for the current time point plus the chosen action's mean return
  // during search (includes exploration, so biased low).
  double search_value = 0.0;
  std::vector<ActionStats> actions;  // feasible root actions only
  std::size_t tree_nodes = 0;
};

class Planner {
 public:
  Planner(const ComponentModel& model, PlannerConfig config);

  SearchResult search(const Belief& belief, Rng& rng);

 private:
  struct ActionNode {
    int visits = 0;
    double value = 0.0;
    std::vector<std::pair<int, int>> children;  // observation key -> history node
  };
  struct HistoryNode {
    int visits = 0;
    std::array<int, 3> actions = {-1, -1, -1};  // -> action node
  };

  double simulate(State s, Cost c, int node, int depth, Rng& rng);
  double rollout(State s, Cost c, int depth, Rng& rng);
  double greedy_pass(State s, Cost c, Rng& rng);
  Action select_action(int node, Cost c, Rng& rng);
  int child_for(int action_node, int obs_key, bool& created);

  const ComponentModel& model_;
  PlannerConfig config_;
  std::vector<bool> at_risk_;  // decay from s can reach 0 in one step
  int depth_limit_ = 0;    // tree
  int rollout_limit_ = 0;  // rollouts, >= depth_limit_
  std::vector<HistoryNode> histories_;
  std::vector<ActionNode> action_nodes_;
};

Action plan(const ComponentModel& model, const Belief& belief,
            const PlannerConfig& config, Rng& rng);

double root_value(const ComponentModel& model, const Belief& belief,
                  const PlannerConfig& config, Rng& rng);

}  // namespace bpomdp

#endif  // BPOMDP_PLANNER_HPP_
