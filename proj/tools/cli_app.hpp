// Copyright 2026 The qcwalk Authors.
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
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcw/experiment.hpp"

namespace qcw::cli {

inline constexpr const char* kVersion = QCW_VERSION;

struct WalkConfig {
  WalkerKind mode = WalkerKind::hqcw;
  WalkerSettings settings;
  double alpha = 0.8;
};

struct OracleConfig {
  std::string graph_file;  // relative paths resolve against the config file
  NodeId start = 0;
  std::vector<double> alphas{0.3, 0.8};
  std::vector<double> times{1.0, 2.0, 5.0};
  std::size_t trajectories = 10000;
  std::optional<double> dt;
  NoJumpScheme scheme = NoJumpScheme::exact;
};

/// Everything a subcommand may read. Missing JSON keys keep these defaults,
/// unknown keys are rejected.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  ClusteredErSpec graph;
  bool resample_graph = true;
  WalkConfig walk;
  SkipGramParams embedding;
  std::size_t k = 4;
  std::size_t restarts = 50;
  std::size_t repetitions = 10;
  std::vector<Sweep> sweeps;
  OracleConfig oracle;
};

/// Throws ConfigError on unknown keys or wrongly typed values.
PipelineConfig parse_config(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const PipelineConfig& config);

/// FNV-1a of the canonical effective config, excluding the thread count.
std::string config_hash(const nlohmann::json& effective);

/// Builds the experiment description used by the `experiment` subcommand.
ExperimentConfig experiment_config(const PipelineConfig& config);

/// Runs the command line `qcw <args...>`. Errors are reported on `err` as
/// one JSON line and yield exit code 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcw::cli
