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
#include "qcw/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "qcw/errors.hpp"

namespace qcw {

namespace {

__extension__ using Int128 = __int128;

std::size_t count_distinct_rows(const PointMatrix& points, std::size_t cap) {
  std::set<std::vector<double>> seen;
  for (Eigen::Index i = 0; i < points.rows() && seen.size() < cap; ++i) {
    seen.emplace(points.row(i).data(), points.row(i).data() + points.cols());
  }
  return seen.size();
}

PointMatrix plus_plus_init(const PointMatrix& points, std::size_t k, Rng& rng) {
  const auto n = points.rows();
  PointMatrix centroids(static_cast<Eigen::Index>(k), points.cols());
  centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(n))));
  Eigen::VectorXd d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (std::size_t c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      const double r = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (r < acc) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(n)));
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(static_cast<Eigen::Index>(c))).rowwise().squaredNorm());
  }
  return centroids;
}

double assign(const PointMatrix& points, const PointMatrix& centroids, std::vector<int>& labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best_c;
    total += best;
  }
  return total;
}

Int128 pairs_of(long long n) { return static_cast<Int128>(n) * (n - 1) / 2; }

}  // namespace

PointMatrix to_points(const EmbeddingMatrix& e) {
  PointMatrix p(static_cast<Eigen::Index>(e.rows()), static_cast<Eigen::Index>(e.dimension()));
  std::copy(e.data().begin(), e.data().end(), p.data());
  return p;
}

double inertia(const PointMatrix& points, std::span<const int> labels, const PointMatrix& centroids) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    total += (points.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

KMeansRun kmeans_once(const PointMatrix& points, std::size_t k, Rng& rng, const KMeansOptions& options) {
  const auto n = points.rows();
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (static_cast<std::size_t>(n) < k) throw DegenerateInput("fewer points than clusters");

  KMeansRun run;
  run.labels.assign(static_cast<std::size_t>(n), 0);
  run.centroids = plus_plus_init(points, k, rng);
  for (run.iterations = 0; run.iterations < options.max_iterations; ++run.iterations) {
    run.inertia_history.push_back(assign(points, run.centroids, run.labels));

    PointMatrix next = PointMatrix::Zero(run.centroids.rows(), run.centroids.cols());
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(run.labels[static_cast<std::size_t>(i)]);
      next.row(static_cast<Eigen::Index>(c)) += points.row(i);
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        next.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
      } else {
        // Empty cluster: restart it at the point farthest from its centroid.
        Eigen::Index far = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d = (points.row(i) - run.centroids.row(run.labels[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        next.row(static_cast<Eigen::Index>(c)) = points.row(far);
      }
    }
    const double shift = (next - run.centroids).norm();
    run.centroids = std::move(next);
    if (shift < options.tolerance) {
      ++run.iterations;
      break;
    }
  }
  run.inertia = assign(points, run.centroids, run.labels);
  run.inertia_history.push_back(run.inertia);
  return run;
}

ClusteringResult kmeans_best_of(const PointMatrix& points, std::size_t k, std::size_t restarts, std::uint64_t seed,
                                const KMeansOptions& options) {
  if (restarts < 1) throw InvalidArgument("restarts must be at least 1");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (count_distinct_rows(points, k) < k) throw DegenerateInput("fewer than k distinct points");
  ClusteringResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, {hash_tag("kmeans-restart"), r}));
    KMeansRun run = kmeans_once(points, k, rng, options);
    best.restart_inertias.push_back(run.inertia);
    if (run.inertia < best.inertia) {
      best.inertia = run.inertia;
      best.labels = std::move(run.labels);
      best.restart = r;
    }
  }
  return best;
}

double ari(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("label vectors have lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  const auto n = static_cast<long long>(a.size());
  std::map<std::pair<int, int>, long long> cells;
  std::map<int, long long> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++cells[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  Int128 sum_cells = 0, sum_rows = 0, sum_cols = 0;
  for (const auto& [_, c] : cells) sum_cells += pairs_of(c);
  for (const auto& [_, c] : rows) sum_rows += pairs_of(c);
  for (const auto& [_, c] : cols) sum_cols += pairs_of(c);
  const Int128 total = pairs_of(n);
  // ARI = (S_ij - S_a S_b / T) / (0.5 (S_a + S_b) - S_a S_b / T), scaled by 2T.
  const Int128 numerator = 2 * total * sum_cells - 2 * sum_rows * sum_cols;
  const Int128 denominator = total * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols;
  if (denominator == 0) return 1.0;
  return static_cast<double>(static_cast<long double>(numerator) / static_cast<long double>(denominator));
}

}  // namespace qcw
