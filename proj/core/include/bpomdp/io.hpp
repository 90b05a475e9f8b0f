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

// Persistence for curves, plans, traces, metrics and run manifests.
//
//   curves     CSV  budget,raw_mean,stderr,repaired_value
//              JSON {"schema_version", "component", "n_episodes", "grid",
//                    "raw_values", "stderr", "values", "adjustment_ss", "flagged"}
//   plans      JSON {"schema_version", "method", "total_budget", "step",
//                    "welfare", "elapsed_ms", "allocations": [{component, budget}]}
//   traces     JSON lines, one episode per line
//   metrics    CSV  component,policy,budget,mean_ttf,std_ttf,n_seeds
//
// Every file is written to a temporary sibling first and renamed into place.

#ifndef BPOMDP_IO_HPP_
#define BPOMDP_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpomdp/allocator.hpp"
#include "bpomdp/evaluation.hpp"
#include "bpomdp/simulation.hpp"
#include "bpomdp/value_curve.hpp"

namespace bpomdp {

inline constexpr int kArtifactSchemaVersion = 1;

void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

std::string curve_to_csv(const ValueCurve& curve);
std::string curves_to_json(std::span<const ValueCurve> curves);
std::vector<ValueCurve> curves_from_json(std::string_view text);

std::string plan_to_json(const AllocationPlan& plan);
AllocationPlan plan_from_json(std::string_view text);

std::string trace_to_json_line(const EpisodeTrace& trace);
EpisodeTrace trace_from_json_line(std::string_view line);

std::string metrics_to_csv(const EvaluationResult& result);

struct ArtifactRecord {
  std::string path;  // relative to the manifest's directory
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::uint64_t master_seed = 0;
  std::map<std::string, std::string> config;
  std::string config_hash;  // sha256 over the sorted config entries
  std::vector<ArtifactRecord> inputs;
  std::vector<ArtifactRecord> artifacts;
  std::map<std::string, double> timings_ms;
};

std::string hash_config(const std::map<std::string, std::string>& config);
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

// Records the artifact's hash relative to `root`.
ArtifactRecord record_artifact(const std::filesystem::path& root,
                               const std::filesystem::path& file);

// Returns one message per artifact that is missing or whose hash changed.
std::vector<std::string> verify_manifest(const RunManifest& manifest,
                                         const std::filesystem::path& root);

}  // namespace bpomdp

#endif  // BPOMDP_IO_HPP_
