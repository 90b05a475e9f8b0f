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

// bpomdp: command-line pipeline verify -> curves -> allocate -> simulate -> report.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpomdp/bpomdp.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace bpomdp;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitTheory = 3;
constexpr int kReportSchemaVersion = 1;
constexpr const char* kOutEnv = "BPOMDP_OUT";

// Missing inputs from an earlier stage of the pipeline.
class UpstreamMissing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct PlannerFlags {
  int n_sims = 1000;
  int depth = 50;
  int rollout_depth = 0;
  double ucb_c = 10.0;
  std::string rollout = "replace-at-risk";
  std::size_t particles = 1000;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n-sims", n_sims, "POMCP simulations per decision")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--depth", depth, "POMCP tree depth")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--rollout-depth", rollout_depth,
                    "rollout cutoff in steps (0 = end of episode)")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--ucb-c", ucb_c, "UCB exploration constant")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--rollout", rollout, "random-feasible | always-d | replace-at-risk")
        ->capture_default_str();
    cmd->add_option("--particles", particles, "belief particles")
        ->check(CLI::PositiveNumber)->capture_default_str();
  }

  PolicySpec policy(PolicyKind kind) const {
    PolicySpec p;
    p.kind = kind;
    p.planner.n_simulations = n_sims;
    p.planner.max_depth = depth;
    p.planner.rollout_depth = rollout_depth;
    p.planner.ucb_c = ucb_c;
    p.planner.rollout = parse_rollout_policy(rollout);
    p.n_particles = particles;
    return p;
  }

  void record(std::map<std::string, std::string>& config) const {
    config["n_sims"] = std::to_string(n_sims);
    config["depth"] = std::to_string(depth);
    config["rollout_depth"] = std::to_string(rollout_depth);
    config["ucb_c"] = std::to_string(ucb_c);
    config["rollout"] = rollout;
    config["particles"] = std::to_string(particles);
  }
};

// Output directory: --out if given, else $BPOMDP_OUT (or ./runs) plus a name
// derived from the command and its configuration.
fs::path resolve_out(const std::string& out, const std::string& command,
                     const std::map<std::string, std::string>& config) {
  if (!out.empty()) return out;
  const char* env = std::getenv(kOutEnv);
  const fs::path root = env && *env ? fs::path(env) : fs::path("runs");
  return root / (command + "-" + hash_config(config).substr(0, 12));
}

// Inputs inside the run directory are recorded relative to it, others absolute.
ArtifactRecord input_record(const fs::path& out, const fs::path& file) {
  const fs::path abs = fs::weakly_canonical(fs::absolute(file));
  const fs::path rel = abs.lexically_relative(fs::weakly_canonical(fs::absolute(out)));
  const bool inside = !rel.empty() && *rel.begin() != "..";
  return ArtifactRecord{(inside ? rel : abs).generic_string(), sha256_file(file)};
}

void write_manifest(const fs::path& out, RunManifest manifest) {
  manifest.config_hash = hash_config(manifest.config);
  write_file_atomic(out / "manifest.json", manifest_to_json(manifest));
}

void write_artifact(const fs::path& out, const fs::path& rel, std::string_view contents,
                    RunManifest& manifest) {
  write_file_atomic(out / rel, contents);
  manifest.artifacts.push_back(record_artifact(out, out / rel));
}

Scenario load_with_overrides(const std::string& path, std::optional<Cost> budget,
                             std::optional<int> horizon) {
  if (path.empty()) throw UpstreamMissing("--scenario is required (see `bpomdp generate`)");
  Scenario sc = load_scenario(path);
  if (budget) sc.total_budget = *budget;
  if (horizon) sc.horizon = *horizon;
  sc.validate();
  return sc;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  State s_max_hi = 6;
  State d0_hi = 3;
  int horizon_hi = 12;
  int budget_hi = 10;
  bool strict = false;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  TheoryGrid grid;
  grid.s_max_hi = a.s_max_hi;
  grid.d0_hi = a.d0_hi;
  grid.horizon_hi = a.horizon_hi;
  grid.budget_hi = a.budget_hi;
  TheoryCheckOptions options;
  options.strict_flatness = a.strict;

  const auto start = Clock::now();
  const TheoryReport report = check_theory(grid, options);
  const double elapsed = ms_since(start);

  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"property", v.property}, {"s_max", v.s_max}, {"d0", v.d0},
                          {"horizon", v.horizon}, {"s0", v.s0}, {"budget", v.budget},
                          {"detail", v.detail}});
  }
  const json j{
      {"schema_version", kArtifactSchemaVersion},
      {"grid", {{"s_max", {grid.s_max_lo, grid.s_max_hi}}, {"d0", {grid.d0_lo, grid.d0_hi}},
                {"horizon", {grid.horizon_lo, grid.horizon_hi}},
                {"budget", {grid.budget_lo, grid.budget_hi}}}},
      {"strict_flatness", a.strict},
      {"points_checked", report.points_checked},
      {"checks", {{"monotone_in_state", report.monotone_state_checks},
                  {"monotone_in_budget", report.monotone_budget_checks},
                  {"concave_in_budget", report.concavity_checks},
                  {"do_nothing_first", report.do_nothing_first_checks},
                  {"replace_first", report.replace_first_checks},
                  {"flat_beyond_saturation", report.flatness_checks}}},
      {"single_step_regime_points", report.single_step_regime_points},
      {"half_horizon_threshold_failures", report.half_horizon_threshold_failures},
      {"strict_midpoint_points", report.strict_midpoint_points},
      {"violations", violations}};

  std::map<std::string, std::string> config{
      {"s_max_hi", std::to_string(a.s_max_hi)}, {"d0_hi", std::to_string(a.d0_hi)},
      {"horizon_hi", std::to_string(a.horizon_hi)}, {"budget_hi", std::to_string(a.budget_hi)},
      {"strict_flatness", a.strict ? "true" : "false"}};
  const fs::path out = resolve_out(a.out, "verify", config);
  RunManifest manifest{"verify", 0, config, "", {}, {}, {}};
  write_artifact(out, "theory_report.json", j.dump(2) + "\n", manifest);
  manifest.timings_ms["check_theory"] = elapsed;
  write_manifest(out, manifest);

  std::cout << "verify: " << report.points_checked << " points, "
            << report.violations.size() << " violations ("
            << report.half_horizon_threshold_failures
            << " half-horizon threshold misses in the s_max <= d0 regime"
            << (a.strict ? ", counted" : ", guarded") << "), " << elapsed << " ms\n"
            << "report: " << (out / "theory_report.json").string() << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(report.violations.size(), 10); ++i) {
    const auto& v = report.violations[i];
    std::cout << "  " << v.property << " s_max=" << v.s_max << " d0=" << v.d0
              << " H=" << v.horizon << " s0=" << v.s0 << " b=" << v.budget << ": "
              << v.detail << "\n";
  }
  return report.ok() ? kExitOk : kExitTheory;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::uint64_t seed = 42;
  int components = 20;
  Cost budget = 10000;
  int horizon = 100;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  GeneratorSpec spec = building_generator();
  spec.n_components = a.components;
  spec.total_budget = a.budget;
  spec.horizon = a.horizon;
  if (a.components != 20) spec.name = "building-" + std::to_string(a.components);
  const Scenario sc = generate_scenario(spec, a.seed);
  const fs::path out = a.out.empty() ? fs::path(spec.name + ".json") : fs::path(a.out);
  save_scenario(sc, out);
  std::cout << "wrote " << out.string() << " (" << sc.components.size()
            << " components, B = " << sc.total_budget << ")\n";
  for (const auto& f : sc.flags) std::cout << "  flag: " << f << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- curves

struct CurvesArgs {
  std::string scenario;
  std::optional<Cost> budget;
  std::optional<int> horizon;
  std::uint64_t seed = 42;
  int episodes = 30;
  Cost grid_step = 0;
  int max_replacements = -1;
  int tail_points = 4;
  std::string components;
  PlannerFlags planner;
  std::string out;
};

int run_curves(const CurvesArgs& a) {
  const Scenario sc = load_with_overrides(a.scenario, a.budget, a.horizon);
  std::map<std::string, std::string> config{
      {"scenario", fs::path(a.scenario).filename().string()},
      {"total_budget", std::to_string(sc.total_budget)},
      {"horizon", std::to_string(sc.horizon)},
      {"episodes", std::to_string(a.episodes)},
      {"grid_step", std::to_string(a.grid_step)},
      {"max_replacements", std::to_string(a.max_replacements)},
      {"tail_points", std::to_string(a.tail_points)},
      {"components", a.components}};
  a.planner.record(config);
  config["seed"] = std::to_string(a.seed);
  const fs::path out = resolve_out(a.out, "curves", config);
  RunManifest manifest{"curves", a.seed, config, "", {}, {}, {}};
  manifest.inputs.push_back(input_record(out, a.scenario));

  const PolicySpec policy = a.planner.policy(PolicyKind::kPomcp);
  const auto wanted = split_csv(a.components);
  std::vector<ValueCurve> curves;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < sc.components.size(); ++i) {
    const auto& comp = sc.components[i];
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), comp.model.name()) == wanted.end()) {
      continue;
    }
    std::vector<Cost> grid;
    if (a.grid_step > 0) {
      for (Cost b = 0; b < sc.total_budget; b += a.grid_step) grid.push_back(b);
      grid.push_back(sc.total_budget);
    } else {
      GridOptions go;
      go.max_replacements = a.max_replacements;
      go.tail_points = a.tail_points;
      grid = default_grid(comp.model, sc.total_budget, sc.horizon, go);
    }
    const auto t0 = Clock::now();
    ValueCurve curve = repair(sweep(comp.model, grid, comp.initial_state, sc.horizon,
                                    policy, a.episodes, derive_seed(a.seed, {i})));
    manifest.timings_ms["curve:" + comp.model.name()] = ms_since(t0);
    write_artifact(out, fs::path("curves") / (comp.model.name() + ".csv"),
                   curve_to_csv(curve), manifest);
    std::cout << comp.model.name() << ": " << grid.size() << " points, V(0) = "
              << curve.values.front() << ", V(max) = " << curve.values.back()
              << (curve.flagged.empty() ? "" : ", flagged points") << "\n";
    curves.push_back(std::move(curve));
  }
  if (!wanted.empty() && curves.size() != wanted.size()) {
    throw ScenarioError("--components names a component not in the scenario");
  }
  write_artifact(out, "curves.json", curves_to_json(curves), manifest);
  manifest.timings_ms["total"] = ms_since(start);
  manifest.config["scenario_path"] = fs::absolute(a.scenario).string();
  write_manifest(out, manifest);
  std::cout << "curves: " << (out / "curves.json").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- allocate

struct AllocateArgs {
  std::string curves;
  std::string scenario;
  std::string method = "greedy";
  std::optional<Cost> budget;
  Cost step = 0;
  int repeats = 1;
  std::string out;
};

std::vector<ValueCurve> load_curves(const fs::path& dir) {
  const fs::path file = fs::is_directory(dir) ? dir / "curves.json" : dir;
  if (!fs::exists(file)) {
    throw UpstreamMissing("no curves at " + file.string() +
                          "; run `bpomdp curves --scenario S --out " + dir.string() +
                          "` first");
  }
  return curves_from_json(read_file(file));
}

// Config value recorded by the curves run in `dir`, or "" if absent.
std::string curves_config(const fs::path& dir, const std::string& key) {
  const fs::path file = dir / "manifest.json";
  if (!fs::is_directory(dir) || !fs::exists(file)) return {};
  const RunManifest m = manifest_from_json(read_file(file));
  const auto it = m.config.find(key);
  return it == m.config.end() ? std::string() : it->second;
}

int run_allocate(const AllocateArgs& a) {
  const AllocationMethod method = parse_allocation_method(a.method);
  if (a.curves.empty()) {
    throw UpstreamMissing("--curves is required; run `bpomdp curves` first");
  }
  const fs::path curves_dir = a.curves;
  std::vector<ValueCurve> curves = load_curves(curves_dir);
  std::string scenario_path = a.scenario;
  if (scenario_path.empty()) scenario_path = curves_config(curves_dir, "scenario_path");
  const std::string curves_budget = curves_config(curves_dir, "total_budget");

  std::optional<Scenario> sc;
  if (!scenario_path.empty()) sc = load_scenario(scenario_path);
  Cost budget = 0;
  if (a.budget) {
    budget = *a.budget;
  } else if (!curves_budget.empty()) {
    budget = std::stoll(curves_budget);
  } else if (sc) {
    budget = sc->total_budget;
  } else {
    throw UpstreamMissing("--budget is required when no scenario is known");
  }
  Cost step = a.step;
  if (step <= 0) step = sc ? default_step(sc->models()) : 1;

  std::map<std::string, std::string> config{
      {"method", a.method}, {"total_budget", std::to_string(budget)},
      {"step", std::to_string(step)}};
  const fs::path out =
      a.out.empty() ? (fs::is_directory(curves_dir) ? curves_dir / ("plan-" + a.method)
                                                    : resolve_out("", "allocate", config))
                    : fs::path(a.out);
  RunManifest manifest{"allocate", 0, config, "", {}, {}, {}};
  manifest.inputs.push_back(input_record(
      out, fs::is_directory(curves_dir) ? curves_dir / "curves.json" : curves_dir));
  if (!scenario_path.empty()) manifest.inputs.push_back(input_record(out, scenario_path));

  AllocationPlan plan;
  std::vector<double> times;
  for (int r = 0; r < std::max(1, a.repeats); ++r) {
    switch (method) {
      case AllocationMethod::kGreedy:
        plan = allocate_greedy(curves, budget, step);
        break;
      case AllocationMethod::kBruteForce:
        plan = allocate_bruteforce(curves, budget, step);
        break;
      case AllocationMethod::kBaselineMttf: {
        if (!sc) {
          throw UpstreamMissing("the baseline method needs --scenario for MTTF");
        }
        std::vector<ComponentModel> models;
        for (const auto& c : curves) models.push_back(sc->components[sc->index_of(c.component)].model);
        plan = allocate_baseline(models, curves, budget);
        break;
      }
    }
    times.push_back(plan.elapsed_ms);
  }
  double mean = 0.0;
  for (double t : times) mean += t;
  mean /= static_cast<double>(times.size());
  manifest.timings_ms["allocate_mean"] = mean;
  manifest.timings_ms["allocate_last"] = plan.elapsed_ms;
  manifest.config["scenario_path"] = scenario_path.empty() ? "" : fs::absolute(scenario_path).string();
  write_artifact(out, "plan.json", plan_to_json(plan), manifest);
  write_manifest(out, manifest);

  std::cout << "allocate (" << a.method << "): welfare " << plan.welfare << ", "
            << mean << " ms over " << times.size() << " run(s)\n";
  for (std::size_t i = 0; i < plan.components.size(); ++i) {
    std::cout << "  " << plan.components[i] << " " << plan.budgets[i] << "\n";
  }
  std::cout << "plan: " << (out / "plan.json").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::string plan;
  std::string policy = "pomcp";
  int seeds = 5;
  std::uint64_t seed = 42;
  std::optional<int> horizon;
  std::string component;
  std::optional<Cost> budget;
  PlannerFlags planner;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const PolicyKind kind = parse_policy_kind(a.policy);
  Scenario sc = load_with_overrides(a.scenario, std::nullopt, a.horizon);

  AllocationPlan plan;
  std::string plan_label;
  if (!a.component.empty()) {
    // Single component at a fixed budget, for budget sweeps.
    if (!a.budget) throw DomainError("--component needs --budget");
    const std::size_t idx = sc.index_of(a.component);
    Scenario one = sc;
    one.components = {sc.components[idx]};
    one.total_budget = *a.budget;
    one.validate();
    sc = std::move(one);
    plan.components = {a.component};
    plan.budgets = {*a.budget};
    plan.total_budget = *a.budget;
    plan_label = a.component + "@" + std::to_string(*a.budget);
  } else {
    if (a.plan.empty()) {
      throw UpstreamMissing("--plan is required; run `bpomdp allocate` first "
                            "(or pass --component and --budget)");
    }
    fs::path plan_file = a.plan;
    if (fs::is_directory(plan_file)) plan_file /= "plan.json";
    if (!fs::exists(plan_file)) {
      throw UpstreamMissing("no plan at " + plan_file.string() +
                            "; run `bpomdp allocate` first");
    }
    plan = plan_from_json(read_file(plan_file));
    plan_label = sha256_file(plan_file).substr(0, 12);
    // Plans built from a subset of curves cover only those components.
    Scenario subset = sc;
    subset.components.clear();
    for (const auto& name : plan.components) subset.components.push_back(sc.components[sc.index_of(name)]);
    subset.total_budget = plan.total_budget;
    subset.validate();
    sc = std::move(subset);
  }

  std::map<std::string, std::string> config{
      {"scenario", fs::path(a.scenario).filename().string()},
      {"policy", a.policy},
      {"seeds", std::to_string(a.seeds)},
      {"horizon", std::to_string(sc.horizon)},
      {"plan", plan_label}};
  if (kind == PolicyKind::kPomcp) a.planner.record(config);
  config["seed"] = std::to_string(a.seed);
  const fs::path out = resolve_out(a.out, "simulate", config);
  RunManifest manifest{"simulate", a.seed, config, "", {}, {}, {}};
  manifest.inputs.push_back(input_record(out, a.scenario));
  if (a.component.empty()) {
    fs::path plan_file = a.plan;
    if (fs::is_directory(plan_file)) plan_file /= "plan.json";
    manifest.inputs.push_back(input_record(out, plan_file));
  }

  const auto start = Clock::now();
  const EvaluationResult result =
      evaluate(sc, plan, a.planner.policy(kind), a.seeds, sc.horizon, a.seed);
  manifest.timings_ms["evaluate"] = ms_since(start);

  std::string traces;
  for (const auto& t : result.traces) {
    check_budget_safety(t);
    traces += trace_to_json_line(t);
  }
  write_artifact(out, "traces.jsonl", traces, manifest);
  write_artifact(out, "metrics.csv", metrics_to_csv(result), manifest);
  write_manifest(out, manifest);

  for (const auto& m : result.components) {
    std::cout << "  " << m.component << " budget " << m.budget << ": TTF " << m.mean_ttf
              << " (sd " << m.std_ttf << ")\n";
  }
  std::cout << "simulate (" << a.policy << "): overall TTF " << result.overall_ttf
            << " over " << a.seeds << " seeds, " << result.traces.size()
            << " traces\nmetrics: " << (out / "metrics.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> runs;
  std::string out;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const fs::path& file) {
  CsvTable t;
  std::istringstream in(read_file(file));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

int run_report(const ReportArgs& a) {
  if (a.runs.empty()) throw UpstreamMissing("--runs needs at least one run directory");
  std::ostringstream ttf, history, alloc;
  ttf << "schema_version,run,component,policy,budget,mean_ttf,std_ttf,n_seeds\n";
  history << "schema_version,run,component,policy,budget,seed,t,state,belief_mean,action,"
             "cumulative_cost\n";
  alloc << "schema_version,run,method,component,budget\n";
  std::size_t n_metrics = 0, n_plans = 0;

  RunManifest manifest{"report", 0, {}, "", {}, {}, {}};
  const fs::path out = a.out.empty() ? resolve_out("", "report", {{"runs", [&] {
                                         std::string s;
                                         for (const auto& r : a.runs) s += r + ";";
                                         return s;
                                       }()}})
                                     : fs::path(a.out);
  for (const auto& run : a.runs) {
    const fs::path dir = run;
    const std::string label = dir.filename().string();
    bool found = false;
    if (fs::exists(dir / "metrics.csv")) {
      found = true;
      ++n_metrics;
      manifest.inputs.push_back(input_record(out, dir / "metrics.csv"));
      const CsvTable t = read_csv(dir / "metrics.csv");
      for (const auto& row : t.rows) {
        ttf << kReportSchemaVersion << ',' << label;
        for (const auto& cell : row) ttf << ',' << cell;
        ttf << '\n';
      }
    }
    if (fs::exists(dir / "traces.jsonl")) {
      std::istringstream in(read_file(dir / "traces.jsonl"));
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const EpisodeTrace tr = trace_from_json_line(line);
        for (const auto& s : tr.steps) {
          history << kReportSchemaVersion << ',' << label << ',' << tr.component << ','
                  << to_string(tr.policy) << ',' << tr.budget << ',' << tr.seed << ','
                  << s.t << ',' << s.state << ',' << s.belief_mean << ','
                  << to_string(s.action) << ',' << s.cumulative << '\n';
        }
      }
    }
    if (fs::exists(dir / "plan.json")) {
      found = true;
      ++n_plans;
      manifest.inputs.push_back(input_record(out, dir / "plan.json"));
      const AllocationPlan p = plan_from_json(read_file(dir / "plan.json"));
      for (std::size_t i = 0; i < p.components.size(); ++i) {
        alloc << kReportSchemaVersion << ',' << label << ',' << to_string(p.method) << ','
              << p.components[i] << ',' << p.budgets[i] << '\n';
      }
    }
    if (!found) {
      throw UpstreamMissing("run " + run + " has neither metrics.csv nor plan.json; "
                            "run `bpomdp simulate` or `bpomdp allocate` first");
    }
  }
  write_artifact(out, "ttf_by_budget.csv", ttf.str(), manifest);
  write_artifact(out, "ci_history.csv", history.str(), manifest);
  write_artifact(out, "allocations.csv", alloc.str(), manifest);
  write_manifest(out, manifest);
  std::cout << "report: merged " << n_metrics << " metrics and " << n_plans
            << " plans into " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained POMDP maintenance planner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bpomdp 0.1.0");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "machine-check the concavity theory on small instances");
  v->add_option("--s-max", verify.s_max_hi, "largest s_max")->capture_default_str();
  v->add_option("--d0", verify.d0_hi, "largest d0")->capture_default_str();
  v->add_option("--horizon", verify.horizon_hi, "largest horizon")->capture_default_str();
  v->add_option("--max-budget", verify.budget_hi, "largest budget")->capture_default_str();
  v->add_flag("--strict-flatness", verify.strict,
              "apply the half-horizon flatness threshold when s_max <= d0 too");
  v->add_option("--out", verify.out, "output directory");

  GenerateArgs generate;
  auto* g = app.add_subcommand("generate", "write a synthetic building scenario");
  g->add_option("--seed", generate.seed)->capture_default_str();
  g->add_option("--components", generate.components)->check(CLI::PositiveNumber)->capture_default_str();
  g->add_option("--budget", generate.budget)->check(CLI::NonNegativeNumber)->capture_default_str();
  g->add_option("--horizon", generate.horizon)->check(CLI::NonNegativeNumber)->capture_default_str();
  g->add_option("--out", generate.out, "scenario file to write");

  CurvesArgs curves;
  auto* c = app.add_subcommand("curves", "estimate value-of-budget curves per component");
  c->add_option("--scenario", curves.scenario, "scenario JSON")->required();
  c->add_option("--budget", curves.budget, "override total budget");
  c->add_option("--horizon", curves.horizon, "override horizon");
  c->add_option("--seed", curves.seed, "master seed")->capture_default_str();
  c->add_option("--episodes", curves.episodes, "episodes per grid point")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--grid-step", curves.grid_step, "uniform grid step (0 = default grid)")
      ->check(CLI::NonNegativeNumber);
  c->add_option("--max-replacements", curves.max_replacements,
                "cap on replacement multiples in the default grid (-1 = ceil(H/2))");
  c->add_option("--tail-points", curves.tail_points)->check(CLI::NonNegativeNumber);
  c->add_option("--components", curves.components, "comma-separated subset");
  curves.planner.add_to(c);
  c->add_option("--out", curves.out, "output directory");

  AllocateArgs allocate;
  auto* al = app.add_subcommand("allocate", "split the total budget across components");
  al->add_option("--curves", allocate.curves, "curves directory or curves.json");
  al->add_option("--scenario", allocate.scenario, "scenario JSON (needed for baseline)");
  al->add_option("--method", allocate.method, "greedy | bruteforce | baseline")->capture_default_str();
  al->add_option("--budget", allocate.budget, "total budget")->check(CLI::NonNegativeNumber);
  al->add_option("--step", allocate.step, "allocation quantum (0 = gcd of costs)");
  al->add_option("--repeats", allocate.repeats, "repeat for timing")->check(CLI::PositiveNumber);
  al->add_option("--out", allocate.out, "output directory");

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "run closed-loop episodes under a plan");
  s->add_option("--scenario", simulate.scenario, "scenario JSON")->required();
  s->add_option("--plan", simulate.plan, "plan directory or plan.json");
  s->add_option("--policy", simulate.policy, "pomcp | baseline")->capture_default_str();
  s->add_option("--seeds", simulate.seeds, "episodes per component")
      ->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--seed", simulate.seed, "master seed")->capture_default_str();
  s->add_option("--horizon", simulate.horizon, "override horizon");
  s->add_option("--component", simulate.component, "simulate one component only");
  s->add_option("--budget", simulate.budget, "budget for --component")
      ->check(CLI::NonNegativeNumber);
  simulate.planner.add_to(s);
  s->add_option("--out", simulate.out, "output directory");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "merge run outputs into plot-ready CSV");
  r->add_option("--runs", report.runs, "run directories")->required();
  r->add_option("--out", report.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*v) return run_verify(verify);
    if (*g) return run_generate(generate);
    if (*c) return run_curves(curves);
    if (*al) return run_allocate(allocate);
    if (*s) return run_simulate(simulate);
    if (*r) return run_report(report);
  } catch (const UpstreamMissing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetViolation& e) {
    std::cerr << "error: budget violation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
