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

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcw/random.hpp"
#include "qcw/skipgram.hpp"

namespace qcw {

using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

PointMatrix to_points(const EmbeddingMatrix& e);

struct KMeansRun {
  std::vector<int> labels;
  PointMatrix centroids;
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_history;  // after each assignment step
};

struct ClusteringResult {
  std::vector<int> labels;
  double inertia = 0.0;
  std::size_t restart = 0;                // index of the selected restart
  std::vector<double> restart_inertias;   // one per restart
};

struct KMeansOptions {
  std::size_t max_iterations = 300;
  double tolerance = 1e-8;  // stop once total centroid movement falls below
};

/// One k-means++ seeded Lloyd run.
KMeansRun kmeans_once(const PointMatrix& points, std::size_t k, Rng& rng, const KMeansOptions& options = {});

/// Best of `restarts` independent runs by inertia (first on ties). Throws
/// DegenerateInput when there are fewer than k distinct points.
ClusteringResult kmeans_best_of(const PointMatrix& points, std::size_t k, std::size_t restarts, std::uint64_t seed,
                                const KMeansOptions& options = {});

/// Sum of squared distances from each point to its assigned centroid.
double inertia(const PointMatrix& points, std::span<const int> labels, const PointMatrix& centroids);

/// Hubert-Arabie adjusted Rand index from the contingency table. Labels
/// are arbitrary integers. Throws LengthMismatch on unequal lengths. Both
/// partitions trivial (a single cluster, or all singletons) gives 1.
double ari(std::span<const int> a, std::span<const int> b);

}  // namespace qcw
