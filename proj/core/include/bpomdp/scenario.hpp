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

// Scenario files: a named set of components sharing one budget and horizon.
//
// Scenario JSON (schema_version 1):
//
//   {
//     "schema_version": 1,
//     "name": "building-20",
//     "total_budget": 10000,
//     "horizon": 100,
//     "components": [
//       {"name": "boiler", "s_max": 100, "initial_state": 100,
//        "costs": {"d": 0, "q": 1, "m": 45},
//        "decay": {"generator": "binomial", "max_decrement": 6, "rate": 0.4}}
//     ]
//   }
//
// "decay" is one of
//   {"generator": "binomial", "max_decrement": K, "rate": q}
//       per-step decrement ~ Binomial(K, q), clamped at 0;
//   {"generator": "deterministic", "d0": n}
//       decrement of exactly n per step;
//   {"rows": [[p(1,0), p(1,1)], [p(2,0), p(2,1), p(2,2)], ...]}
//       explicit rows for s = 1..s_max.

#ifndef BPOMDP_SCENARIO_HPP_
#define BPOMDP_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bpomdp/model.hpp"

namespace bpomdp {

inline constexpr int kScenarioSchemaVersion = 1;

class ScenarioError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct BinomialDecay {
  int max_decrement = 1;
  double rate = 0.0;
  friend bool operator==(const BinomialDecay&, const BinomialDecay&) = default;
};

struct DeterministicDecay {
  State d0 = 1;
  friend bool operator==(const DeterministicDecay&, const DeterministicDecay&) = default;
};

struct ExplicitDecay {
  std::vector<std::vector<double>> rows;
  friend bool operator==(const ExplicitDecay&, const ExplicitDecay&) = default;
};

using DecaySpec = std::variant<ExplicitDecay, BinomialDecay, DeterministicDecay>;

// Expands a decay description into explicit rows for s = 1..s_max.
std::vector<std::vector<double>> expand_decay(const DecaySpec& spec, State s_max);

struct ComponentSpec {
  ComponentModel model;
  State initial_state = 0;
  DecaySpec decay;
  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

ComponentSpec make_component(std::string name, State s_max, DecaySpec decay,
                             ActionCosts costs, std::optional<State> initial_state = {});

struct Scenario {
  std::string name;
  Cost total_budget = 0;
  int horizon = 0;
  std::vector<ComponentSpec> components;
  // Non-fatal findings, e.g. "infinite-mttf:<component>".
  std::vector<std::string> flags;

  std::vector<ComponentModel> models() const;
  // Index of the named component; throws ScenarioError when absent.
  std::size_t index_of(std::string_view component) const;
  // Enforces budget/horizon signs, unique names, initial states in range,
  // and recomputes flags.
  void validate();

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

struct ComponentTemplate {
  std::string name;
  std::optional<Cost> cost_m;
  std::optional<Cost> cost_q;
  std::optional<double> rate;
};

struct GeneratorSpec {
  std::string name = "synthetic";
  int n_components = 20;
  Cost total_budget = 10000;
  int horizon = 100;
  State s_max = 100;
  // Cost bands as fractions of the total budget.
  double replace_frac_lo = 0.0015;
  double replace_frac_hi = 0.03;
  double inspect_frac_lo = 0.0001;
  double inspect_frac_hi = 0.0003;
  // Per-step decrement ~ Binomial(K, q) with K in [lo, hi] and mean K q in
  // [mean_lo, mean_hi].
  int max_decrement_lo = 3;
  int max_decrement_hi = 8;
  double mean_decrement_lo = 1.5;
  double mean_decrement_hi = 4.0;
  // Optional per-component names and pinned values; missing entries are
  // named "component-<i>".
  std::vector<ComponentTemplate> templates;
};

// Deterministic in (spec, seed).
Scenario generate_scenario(const GeneratorSpec& spec, std::uint64_t seed);

// Twenty building components with the air handling unit, boiler and lighting
// equipment pinned at replacement costs 250, 45 and 24.
GeneratorSpec building_generator();

}  // namespace bpomdp

#endif  // BPOMDP_SCENARIO_HPP_
