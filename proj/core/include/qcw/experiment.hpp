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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcw/corpus.hpp"
#include "qcw/graph.hpp"
#include "qcw/hybrid_walk.hpp"
#include "qcw/skipgram.hpp"

namespace qcw {

enum class WalkerKind { first_order, second_order, hqcw };

/// "crw1", "crw2", "hqcw".
std::string_view walker_name(WalkerKind kind);
WalkerKind parse_walker(std::string_view name);

/// Walker settings shared by all rows of an experiment.
struct WalkerSettings {
  std::size_t walk_length = 10;
  std::size_t walks_per_node = 3;
  double p = 4.0;
  double q = 0.1;
  std::optional<double> hqcw_dt;
  std::optional<double> hqcw_t_max;
  NoJumpScheme hqcw_scheme = NoJumpScheme::exact;
};

/// Trajectory parameters for the hqcw walker under these settings.
HqcwParams hqcw_params(const WalkerSettings& settings, double alpha, std::uint64_t seed);

/// Walks with the given walker; alpha is used by hqcw only.
WalkCorpus generate_walks(const Graph& g, WalkerKind kind, const WalkerSettings& settings, double alpha,
                          std::uint64_t seed, std::size_t threads = 1);

struct Sweep {
  WalkerKind walker = WalkerKind::hqcw;
  std::vector<double> alphas{0.8};  // hqcw only
  std::vector<std::size_t> dimensions{32};
};

struct ExperimentConfig {
  ClusteredErSpec graph;  // graph.seed is replaced by derived sub-seeds
  bool resample_graph = true;
  WalkerSettings walkers;
  SkipGramParams embedding;  // dimension and seed are set per row
  std::size_t k = 4;
  std::size_t restarts = 50;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::vector<Sweep> sweeps;
  std::size_t threads = 1;

  void validate() const;
};

struct ExperimentRow {
  std::string walker;
  std::string param_name;
  std::string param_value;
  std::size_t dimension = 0;
  std::size_t repetitions = 0;
  double ari_mean = 0.0;
  double ari_stderr = 0.0;
  bool stderr_defined = true;  // false for a single repetition
  std::vector<double> ari_per_repetition;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;  // sorted by (walker, parameter, d)
  std::vector<std::string> warnings;
};

/// Sub-seeds of repetition `rep`. run_experiment and the command-line
/// stages share them, so a staged run reproduces one repetition. alpha is
/// ignored for the classical walkers.
std::uint64_t graph_seed(std::uint64_t master, std::size_t rep);
std::uint64_t walks_seed(std::uint64_t master, WalkerKind kind, double alpha, std::size_t rep);
std::uint64_t embedding_seed(std::uint64_t master, std::size_t rep, std::size_t dimension);
std::uint64_t kmeans_seed(std::uint64_t master, std::size_t rep, std::size_t dimension);

/// Scores one embedding against ground truth: best-of-restarts k-means, then
/// ARI.
double score_embedding(const EmbeddingMatrix& embedding, const CommunityLabels& truth, std::size_t k,
                       std::size_t restarts, std::uint64_t seed);

/// For every sweep row and repetition: sample (or reuse) the graph, generate
/// walks, train embeddings, cluster, and score ARI. Repetition r uses the
/// same graph and embedding/k-means seeds for every row, so rows are paired
/// by repetition. Output depends only on the config, never on threads.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Columns: walker,param_name,param_value,d,repetitions,ari_mean,ari_stderr.
std::string format_report(const ExperimentReport& report);
void save_report(const ExperimentReport& report, const std::filesystem::path& path,
                 std::span<const std::string> header_lines = {});

}  // namespace qcw
