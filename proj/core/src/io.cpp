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

#include "bpomdp/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace bpomdp {

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json observation_to_json(Observation o) {
  return o.is_null() ? json(nullptr) : json(o.state());
}

Observation observation_from_json(const json& j) {
  return j.is_null() ? Observation::null() : Observation::exact(j.get<State>());
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_file(path));
}

std::string curve_to_csv(const ValueCurve& curve) {
  std::ostringstream os;
  os << "budget,raw_mean,stderr,repaired_value\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    os << curve.grid[i] << ',' << format_double(curve.raw_values[i]) << ','
       << format_double(curve.std_errors[i]) << ',' << format_double(curve.values[i])
       << '\n';
  }
  return os.str();
}

std::string curves_to_json(std::span<const ValueCurve> curves) {
  json arr = json::array();
  for (const auto& c : curves) {
    arr.push_back({{"component", c.component},
                   {"n_episodes", c.n_episodes},
                   {"grid", c.grid},
                   {"raw_values", c.raw_values},
                   {"stderr", c.std_errors},
                   {"values", c.values},
                   {"adjustment_ss", c.adjustment_ss},
                   {"flagged", c.flagged}});
  }
  return json{{"schema_version", kArtifactSchemaVersion}, {"curves", arr}}.dump(2) + "\n";
}

std::vector<ValueCurve> curves_from_json(std::string_view text) {
  const json j = json::parse(text);
  std::vector<ValueCurve> out;
  for (const auto& cj : j.at("curves")) {
    ValueCurve c;
    c.component = cj.at("component").get<std::string>();
    c.n_episodes = cj.at("n_episodes").get<int>();
    c.grid = cj.at("grid").get<std::vector<Cost>>();
    c.raw_values = cj.at("raw_values").get<std::vector<double>>();
    c.std_errors = cj.at("stderr").get<std::vector<double>>();
    c.values = cj.at("values").get<std::vector<double>>();
    c.adjustment_ss = cj.value("adjustment_ss", 0.0);
    c.flagged = cj.value("flagged", std::vector<std::size_t>{});
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

std::string plan_to_json(const AllocationPlan& plan) {
  json allocations = json::array();
  for (std::size_t i = 0; i < plan.components.size(); ++i) {
    allocations.push_back({{"component", plan.components[i]}, {"budget", plan.budgets[i]}});
  }
  return json{{"schema_version", kArtifactSchemaVersion},
              {"method", std::string(to_string(plan.method))},
              {"total_budget", plan.total_budget},
              {"step", plan.step},
              {"welfare", plan.welfare},
              {"elapsed_ms", plan.elapsed_ms},
              {"allocations", allocations}}
             .dump(2) +
         "\n";
}

AllocationPlan plan_from_json(std::string_view text) {
  const json j = json::parse(text);
  AllocationPlan plan;
  plan.method = parse_allocation_method(j.at("method").get<std::string>());
  plan.total_budget = j.at("total_budget").get<Cost>();
  plan.step = j.value("step", Cost{1});
  plan.welfare = j.value("welfare", 0.0);
  plan.elapsed_ms = j.value("elapsed_ms", 0.0);
  for (const auto& a : j.at("allocations")) {
    plan.components.push_back(a.at("component").get<std::string>());
    plan.budgets.push_back(a.at("budget").get<Cost>());
  }
  if (plan.sum() != plan.total_budget) {
    throw DomainError("allocation plan budgets do not sum to total_budget");
  }
  return plan;
}

std::string trace_to_json_line(const EpisodeTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"t", s.t},
                     {"state", s.state},
                     {"belief_mean", s.belief_mean},
                     {"action", std::string(to_string(s.action))},
                     {"obs", observation_to_json(s.obs)},
                     {"next_state", s.next_state},
                     {"incurred", s.incurred},
                     {"cumulative", s.cumulative},
                     {"reward", s.reward}});
  }
  json j{{"component", trace.component},
         {"policy", std::string(to_string(trace.policy))},
         {"budget", trace.budget},
         {"seed", trace.seed},
         {"s0", trace.s0},
         {"horizon", trace.horizon},
         {"initial_reward", trace.initial_reward},
         {"ttf", trace.ttf()},
         {"failed", trace.failed},
         {"budget_limited", trace.budget_limited},
         {"horizon_end", trace.horizon_end},
         {"steps", steps}};
  return j.dump() + "\n";
}

EpisodeTrace trace_from_json_line(std::string_view line) {
  const json j = json::parse(line);
  EpisodeTrace trace;
  trace.component = j.at("component").get<std::string>();
  trace.policy = parse_policy_kind(j.at("policy").get<std::string>());
  trace.budget = j.at("budget").get<Cost>();
  trace.seed = j.at("seed").get<std::uint64_t>();
  trace.s0 = j.at("s0").get<State>();
  trace.horizon = j.at("horizon").get<int>();
  trace.initial_reward = j.at("initial_reward").get<int>();
  trace.failed = j.at("failed").get<bool>();
  trace.budget_limited = j.at("budget_limited").get<bool>();
  trace.horizon_end = j.at("horizon_end").get<bool>();
  for (const auto& s : j.at("steps")) {
    trace.steps.push_back(TraceStep{s.at("t").get<int>(), s.at("state").get<State>(),
                                    s.at("belief_mean").get<double>(),
                                    parse_action(s.at("action").get<std::string>()),
                                    observation_from_json(s.at("obs")),
                                    s.at("next_state").get<State>(),
                                    s.at("incurred").get<Cost>(),
                                    s.at("cumulative").get<Cost>(),
                                    s.at("reward").get<int>()});
  }
  return trace;
}

std::string metrics_to_csv(const EvaluationResult& result) {
  std::ostringstream os;
  os << "component,policy,budget,mean_ttf,std_ttf,n_seeds\n";
  Cost total = 0;
  for (const auto& m : result.components) {
    os << m.component << ',' << to_string(m.policy) << ',' << m.budget << ','
       << format_double(m.mean_ttf) << ',' << format_double(m.std_ttf) << ','
       << m.n_seeds << '\n';
    total += m.budget;
  }
  if (!result.components.empty()) {
    os << "overall," << to_string(result.components.front().policy) << ',' << total
       << ',' << format_double(result.overall_ttf) << ",,"
       << result.components.front().n_seeds << '\n';
  }
  return os.str();
}

std::string hash_config(const std::map<std::string, std::string>& config) {
  std::string canonical;
  for (const auto& [k, v] : config) canonical += k + '=' + v + '\n';
  return sha256_hex(canonical);
}

std::string manifest_to_json(const RunManifest& manifest) {
  auto records = [](const std::vector<ArtifactRecord>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back({{"path", r.path}, {"sha256", r.sha256}});
    return arr;
  };
  return json{{"schema_version", kArtifactSchemaVersion},
              {"command", manifest.command},
              {"master_seed", manifest.master_seed},
              {"config", manifest.config},
              {"config_hash", manifest.config_hash},
              {"inputs", records(manifest.inputs)},
              {"artifacts", records(manifest.artifacts)},
              {"timings_ms", manifest.timings_ms}}
             .dump(2) +
         "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  const json j = json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.config = j.at("config").get<std::map<std::string, std::string>>();
  m.config_hash = j.at("config_hash").get<std::string>();
  for (const auto& r : j.at("inputs")) {
    m.inputs.push_back({r.at("path").get<std::string>(), r.at("sha256").get<std::string>()});
  }
  for (const auto& r : j.at("artifacts")) {
    m.artifacts.push_back({r.at("path").get<std::string>(), r.at("sha256").get<std::string>()});
  }
  m.timings_ms = j.value("timings_ms", std::map<std::string, double>{});
  return m;
}

ArtifactRecord record_artifact(const std::filesystem::path& root,
                               const std::filesystem::path& file) {
  return ArtifactRecord{std::filesystem::relative(file, root).generic_string(),
                        sha256_file(file)};
}

std::vector<std::string> verify_manifest(const RunManifest& manifest,
                                         const std::filesystem::path& root) {
  std::vector<std::string> problems;
  for (const auto& a : manifest.artifacts) {
    const auto path = root / a.path;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      problems.push_back("missing artifact " + a.path);
    } else if (sha256_file(path) != a.sha256) {
      problems.push_back("hash mismatch for " + a.path);
    }
  }
  return problems;
}

}  // namespace bpomdp
