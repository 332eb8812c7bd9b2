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
#include "qcw/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "parallel.hpp"
#include "qcw/classical_walks.hpp"
#include "qcw/clustering.hpp"
#include "qcw/errors.hpp"
#include "qcw/random.hpp"
#include "qcw/stats.hpp"

namespace qcw {

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

struct RowKey {
  WalkerKind walker;
  double alpha;
  std::size_t dimension;
};

}  // namespace

std::string_view walker_name(WalkerKind kind) {
  switch (kind) {
    case WalkerKind::first_order:
      return "crw1";
    case WalkerKind::second_order:
      return "crw2";
    case WalkerKind::hqcw:
      return "hqcw";
  }
  return "unknown";
}

WalkerKind parse_walker(std::string_view name) {
  if (name == "crw1" || name == "first") return WalkerKind::first_order;
  if (name == "crw2" || name == "second") return WalkerKind::second_order;
  if (name == "hqcw") return WalkerKind::hqcw;
  throw InvalidArgument("unknown walker '" + std::string(name) + "' (expected crw1, crw2 or hqcw)");
}

HqcwParams hqcw_params(const WalkerSettings& settings, double alpha, std::uint64_t seed) {
  HqcwParams params;
  params.alpha = alpha;
  params.dt = settings.hqcw_dt;
  params.t_max = settings.hqcw_t_max;
  params.walk_length = settings.walk_length;
  params.walks_per_node = settings.walks_per_node;
  params.seed = seed;
  params.scheme = settings.hqcw_scheme;
  return params;
}

WalkCorpus generate_walks(const Graph& g, WalkerKind kind, const WalkerSettings& settings, double alpha,
                          std::uint64_t seed, std::size_t threads) {
  switch (kind) {
    case WalkerKind::first_order:
      return generate_corpus(g, FirstOrderParams{settings.walk_length, settings.walks_per_node, seed}, threads);
    case WalkerKind::second_order:
      return generate_corpus(
          g, SecondOrderParams{settings.p, settings.q, settings.walk_length, settings.walks_per_node, seed}, threads);
    case WalkerKind::hqcw:
      return generate_corpus(g, hqcw_params(settings, alpha, seed), threads);
  }
  throw InvalidArgument("unknown walker");
}

void ExperimentConfig::validate() const {
  graph.validate();
  if (k < 1) throw InvalidArgument("K must be at least 1");
  if (restarts < 1) throw InvalidArgument("restarts must be at least 1");
  if (repetitions < 1) throw InvalidArgument("repetitions must be at least 1");
  if (sweeps.empty()) throw InvalidArgument("experiment needs at least one sweep");
  SkipGramParams e = embedding;
  for (const auto& s : sweeps) {
    if (s.dimensions.empty()) throw InvalidArgument("sweep needs at least one dimension");
    for (auto d : s.dimensions) {
      e.dimension = d;
      e.validate();
    }
    if (s.walker == WalkerKind::hqcw) {
      if (s.alphas.empty()) throw InvalidArgument("hqcw sweep needs at least one alpha");
      for (double a : s.alphas) {
        if (!(a > 0.0 && a <= 1.0)) throw InvalidAlpha("alpha must lie in (0, 1], got " + format_number(a));
      }
    }
  }
  if (walkers.p <= 0.0 || walkers.q <= 0.0) throw InvalidArgument("p and q must be positive");
  if (walkers.walk_length < 1 || walkers.walks_per_node < 1) throw InvalidArgument("walk sizes must be positive");
}

std::uint64_t graph_seed(std::uint64_t master, std::size_t rep) {
  return derive_seed(master, {hash_tag("graph"), rep});
}

std::uint64_t walks_seed(std::uint64_t master, WalkerKind kind, double alpha, std::size_t rep) {
  if (kind != WalkerKind::hqcw) alpha = 0.0;
  return derive_seed(master, {hash_tag("walks"), hash_tag(walker_name(kind)), std::bit_cast<std::uint64_t>(alpha), rep});
}

std::uint64_t embedding_seed(std::uint64_t master, std::size_t rep, std::size_t dimension) {
  return derive_seed(master, {hash_tag("embedding"), rep, dimension});
}

std::uint64_t kmeans_seed(std::uint64_t master, std::size_t rep, std::size_t dimension) {
  return derive_seed(master, {hash_tag("kmeans"), rep, dimension});
}

double score_embedding(const EmbeddingMatrix& embedding, const CommunityLabels& truth, std::size_t k,
                       std::size_t restarts, std::uint64_t seed) {
  const auto clusters = kmeans_best_of(to_points(embedding), k, restarts, seed);
  return ari(clusters.labels, truth.values());
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::vector<RowKey> keys;
  for (const auto& s : config.sweeps) {
    const std::vector<double> alphas = s.walker == WalkerKind::hqcw ? s.alphas : std::vector<double>{0.0};
    for (double a : alphas) {
      for (auto d : s.dimensions) keys.push_back({s.walker, a, d});
    }
  }
  // Duplicate rows across sweeps collapse to one.
  std::sort(keys.begin(), keys.end(), [](const RowKey& a, const RowKey& b) {
    return std::make_tuple(walker_name(a.walker), a.alpha, a.dimension) <
           std::make_tuple(walker_name(b.walker), b.alpha, b.dimension);
  });
  keys.erase(std::unique(keys.begin(), keys.end(),
                         [](const RowKey& a, const RowKey& b) {
                           return a.walker == b.walker && a.alpha == b.alpha && a.dimension == b.dimension;
                         }),
             keys.end());

  // scores[rep][row]
  std::vector<std::vector<double>> scores(config.repetitions, std::vector<double>(keys.size()));
  detail::parallel_for(config.repetitions, config.threads, [&](std::size_t rep) {
    ClusteredErSpec spec = config.graph;
    spec.seed = graph_seed(config.seed, config.resample_graph ? rep : 0);
    const LabeledGraph lg = generate_clustered_er(spec);

    // One corpus per (walker, alpha), shared by every dimension.
    std::map<std::pair<int, double>, WalkCorpus> corpora;
    for (std::size_t row = 0; row < keys.size(); ++row) {
      const RowKey& key = keys[row];
      const auto corpus_key = std::make_pair(static_cast<int>(key.walker), key.alpha);
      auto it = corpora.find(corpus_key);
      if (it == corpora.end()) {
        const auto seed = walks_seed(config.seed, key.walker, key.alpha, rep);
        it = corpora.emplace(corpus_key, generate_walks(lg.graph, key.walker, config.walkers, key.alpha, seed)).first;
      }
      SkipGramParams params = config.embedding;
      params.dimension = key.dimension;
      params.deterministic = true;
      params.seed = embedding_seed(config.seed, rep, key.dimension);
      const auto trained = train(it->second, params, lg.graph.node_count());
      scores[rep][row] = score_embedding(trained.input, lg.labels, config.k, config.restarts,
                                         kmeans_seed(config.seed, rep, key.dimension));
    }
  });

  ExperimentReport report;
  for (std::size_t row = 0; row < keys.size(); ++row) {
    const RowKey& key = keys[row];
    ExperimentRow out;
    out.walker = std::string(walker_name(key.walker));
    switch (key.walker) {
      case WalkerKind::first_order:
        out.param_name = "none";
        break;
      case WalkerKind::second_order:
        out.param_name = "p/q";
        out.param_value = format_number(config.walkers.p) + "/" + format_number(config.walkers.q);
        break;
      case WalkerKind::hqcw:
        out.param_name = "alpha";
        out.param_value = format_number(key.alpha);
        break;
    }
    out.dimension = key.dimension;
    out.repetitions = config.repetitions;
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) out.ari_per_repetition.push_back(scores[rep][row]);
    const MeanStderr m = mean_and_stderr(out.ari_per_repetition);
    out.ari_mean = m.mean;
    out.ari_stderr = m.standard_error;
    out.stderr_defined = config.repetitions > 1;
    report.rows.push_back(std::move(out));
  }
  if (config.repetitions == 1) {
    report.warnings.push_back("single repetition: ari_stderr is undefined and reported as 0");
  }
  return report;
}

std::string format_report(const ExperimentReport& report) {
  std::string out = "walker,param_name,param_value,d,repetitions,ari_mean,ari_stderr\n";
  char buf[128];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f\n", r.dimension, r.repetitions, r.ari_mean, r.ari_stderr);
    out += r.walker + "," + r.param_name + "," + r.param_value + "," + buf;
  }
  return out;
}

void save_report(const ExperimentReport& report, const std::filesystem::path& path,
                 std::span<const std::string> header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  out << format_report(report);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace qcw
