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

#include "bpomdp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bpomdp/allocator.hpp"
#include "bpomdp/io.hpp"
#include "bpomdp/rng.hpp"
#include "json.hpp"

namespace bpomdp {

namespace {

using nlohmann::json;

std::vector<double> binomial_pmf(int n, double q) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (q <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (q >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  for (int k = 0; k <= n; ++k) {
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    pmf[k] = std::exp(log_choose + k * std::log(q) + (n - k) * std::log1p(-q));
  }
  return pmf;
}

json decay_to_json(const DecaySpec& spec) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BinomialDecay>) {
          return {{"generator", "binomial"},
                  {"max_decrement", d.max_decrement},
                  {"rate", d.rate}};
        } else if constexpr (std::is_same_v<T, DeterministicDecay>) {
          return {{"generator", "deterministic"}, {"d0", d.d0}};
        } else {
          return {{"rows", d.rows}};
        }
      },
      spec);
}

DecaySpec decay_from_json(const json& j, const std::string& component) {
  if (j.contains("rows")) return ExplicitDecay{j.at("rows").get<std::vector<std::vector<double>>>()};
  const std::string gen = j.at("generator").get<std::string>();
  if (gen == "binomial") {
    return BinomialDecay{j.at("max_decrement").get<int>(), j.at("rate").get<double>()};
  }
  if (gen == "deterministic") return DeterministicDecay{j.at("d0").get<State>()};
  throw ScenarioError("component '" + component + "': unknown decay generator '" +
                      gen + "'");
}

Cost sample_between(Rng& rng, Cost lo, Cost hi) {
  if (hi < lo) std::swap(lo, hi);
  return lo + static_cast<Cost>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace

std::vector<std::vector<double>> expand_decay(const DecaySpec& spec, State s_max) {
  if (s_max < 1) throw ScenarioError("s_max must be >= 1");
  return std::visit(
      [s_max](const auto& d) -> std::vector<std::vector<double>> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitDecay>) {
          return d.rows;
        } else if constexpr (std::is_same_v<T, DeterministicDecay>) {
          if (d.d0 < 1) throw ScenarioError("deterministic decay needs d0 >= 1");
          std::vector<std::vector<double>> rows;
          for (State s = 1; s <= s_max; ++s) {
            std::vector<double> row(s + 1, 0.0);
            row[std::max(s - d.d0, 0)] = 1.0;
            rows.push_back(std::move(row));
          }
          return rows;
        } else {
          if (d.max_decrement < 0) throw ScenarioError("binomial decay needs max_decrement >= 0");
          if (!(d.rate >= 0.0 && d.rate <= 1.0)) {
            throw ScenarioError("binomial decay rate must lie in [0, 1]");
          }
          const std::vector<double> pmf = binomial_pmf(d.max_decrement, d.rate);
          std::vector<std::vector<double>> rows;
          for (State s = 1; s <= s_max; ++s) {
            std::vector<double> row(s + 1, 0.0);
            for (int k = 0; k <= d.max_decrement; ++k) {
              row[std::max(s - k, 0)] += pmf[k];
            }
            rows.push_back(std::move(row));
          }
          return rows;
        }
      },
      spec);
}

ComponentSpec make_component(std::string name, State s_max, DecaySpec decay,
                             ActionCosts costs, std::optional<State> initial_state) {
  ComponentModel model(std::move(name), s_max, expand_decay(decay, s_max), costs);
  return ComponentSpec{std::move(model), initial_state.value_or(s_max), std::move(decay)};
}

std::vector<ComponentModel> Scenario::models() const {
  std::vector<ComponentModel> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.model);
  return out;
}

std::size_t Scenario::index_of(std::string_view component) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].model.name() == component) return i;
  }
  throw ScenarioError("scenario '" + name + "' has no component '" +
                      std::string(component) + "'");
}

void Scenario::validate() {
  if (total_budget < 0) throw ScenarioError("total_budget must be >= 0");
  if (horizon < 0) throw ScenarioError("horizon must be >= 0");
  if (components.empty()) throw ScenarioError("scenario has no components");
  std::set<std::string> seen;
  flags.clear();
  for (const auto& c : components) {
    const std::string& n = c.model.name();
    if (!seen.insert(n).second) throw ScenarioError("duplicate component name '" + n + "'");
    if (c.initial_state < 0 || c.initial_state > c.model.s_max()) {
      throw ScenarioError("component '" + n + "': initial_state out of range");
    }
    if (!std::isfinite(mttf(c.model))) flags.push_back("infinite-mttf:" + n);
  }
}

Scenario parse_scenario(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario scenario;
  try {
    const int version = j.value("schema_version", kScenarioSchemaVersion);
    if (version != kScenarioSchemaVersion) {
      throw ScenarioError("unsupported scenario schema_version " + std::to_string(version));
    }
    scenario.name = j.at("name").get<std::string>();
    scenario.total_budget = j.at("total_budget").get<Cost>();
    scenario.horizon = j.at("horizon").get<int>();
    for (const auto& cj : j.at("components")) {
      const std::string name = cj.at("name").get<std::string>();
      try {
        const State s_max = cj.at("s_max").get<State>();
        const auto& costs = cj.at("costs");
        const ActionCosts ac{costs.value("d", Cost{0}), costs.at("q").get<Cost>(),
                             costs.at("m").get<Cost>()};
        std::optional<State> s0;
        if (cj.contains("initial_state")) s0 = cj.at("initial_state").get<State>();
        scenario.components.push_back(
            make_component(name, s_max, decay_from_json(cj.at("decay"), name), ac, s0));
      } catch (const json::exception& e) {
        throw ScenarioError("component '" + name + "': " + e.what());
      } catch (const ScenarioError&) {
        throw;
      } catch (const DomainError& e) {
        throw ScenarioError(e.what());
      }
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }
  scenario.validate();
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string dump_scenario(const Scenario& scenario) {
  json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["name"] = scenario.name;
  j["total_budget"] = scenario.total_budget;
  j["horizon"] = scenario.horizon;
  j["components"] = json::array();
  for (const auto& c : scenario.components) {
    const auto& costs = c.model.costs();
    j["components"].push_back({{"name", c.model.name()},
                               {"s_max", c.model.s_max()},
                               {"initial_state", c.initial_state},
                               {"costs", {{"d", costs.d}, {"q", costs.q}, {"m", costs.m}}},
                               {"decay", decay_to_json(c.decay)}});
  }
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  write_file_atomic(path, dump_scenario(scenario));
}

Scenario generate_scenario(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.n_components < 1) throw ScenarioError("generator needs n_components >= 1");
  if (spec.max_decrement_lo < 1 || spec.max_decrement_hi < spec.max_decrement_lo) {
    throw ScenarioError("generator decrement range is invalid");
  }
  Scenario scenario;
  scenario.name = spec.name;
  scenario.total_budget = spec.total_budget;
  scenario.horizon = spec.horizon;
  const auto frac = [&](double f) {
    return std::max<Cost>(1, std::llround(f * static_cast<double>(spec.total_budget)));
  };
  for (int i = 0; i < spec.n_components; ++i) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const ComponentTemplate* tpl =
        i < static_cast<int>(spec.templates.size()) ? &spec.templates[i] : nullptr;
    std::string name = tpl && !tpl->name.empty() ? tpl->name : "component-" + std::to_string(i);

    const Cost cm = sample_between(rng, frac(spec.replace_frac_lo), frac(spec.replace_frac_hi));
    const Cost cq = sample_between(rng, frac(spec.inspect_frac_lo), frac(spec.inspect_frac_hi));
    const int k = static_cast<int>(sample_between(rng, spec.max_decrement_lo, spec.max_decrement_hi));
    const double mean = spec.mean_decrement_lo +
                        rng.uniform() * (spec.mean_decrement_hi - spec.mean_decrement_lo);
    double rate = std::clamp(std::round(mean / k * 1e4) / 1e4, 0.0, 1.0);

    ActionCosts costs{0, cq, cm};
    if (tpl && tpl->cost_m) costs.m = *tpl->cost_m;
    if (tpl && tpl->cost_q) costs.q = *tpl->cost_q;
    if (tpl && tpl->rate) rate = *tpl->rate;
    scenario.components.push_back(
        make_component(std::move(name), spec.s_max, BinomialDecay{k, rate}, costs));
  }
  scenario.validate();
  return scenario;
}

GeneratorSpec building_generator() {
  GeneratorSpec spec;
  spec.name = "building-20";
  const char* names[] = {
      "air-handling-unit", "boiler",          "lighting-equipment", "roof-covering",
      "carpeting",         "chiller",         "cooling-tower",      "elevator",
      "fire-alarm-panel",  "sprinkler-system", "water-heater",      "exterior-windows",
      "exterior-doors",    "interior-doors",  "plumbing-fixtures",  "switchgear",
      "emergency-generator", "ceiling-tiles", "interior-paint",     "parking-pavement"};
  for (const char* n : names) spec.templates.push_back(ComponentTemplate{n, {}, {}, {}});
  spec.templates[0].cost_m = 250;
  spec.templates[1].cost_m = 45;
  spec.templates[1].cost_q = 1;
  spec.templates[2].cost_m = 24;
  return spec;
}

}  // namespace bpomdp
