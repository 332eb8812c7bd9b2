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
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "qcw/clustering.hpp"
#include "qcw/errors.hpp"
#include "qcw/random.hpp"

using namespace qcw;

namespace {

double choose2(double n) { return n * (n - 1) / 2; }

// Adjusted Rand index straight from the contingency-table formula.
double reference_ari(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, double> nij;
  std::map<int, double> ai;
  std::map<int, double> bj;
  for (std::size_t i = 0; i < a.size(); ++i) {
    nij[{a[i], b[i]}] += 1;
    ai[a[i]] += 1;
    bj[b[i]] += 1;
  }
  double index = 0.0;
  for (const auto& [key, n] : nij) index += choose2(n);
  double sa = 0.0;
  double sb = 0.0;
  for (const auto& [key, n] : ai) sa += choose2(n);
  for (const auto& [key, n] : bj) sb += choose2(n);
  const double expected = sa * sb / choose2(static_cast<double>(a.size()));
  const double max_index = 0.5 * (sa + sb);
  return (index - expected) / (max_index - expected);
}

std::vector<int> random_labels(std::size_t n, int k, Rng& rng) {
  std::vector<int> out(n);
  for (int& x : out) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  return out;
}

std::vector<int> block_labels() {
  std::vector<int> truth;
  for (int c = 0; c < 4; ++c) truth.insert(truth.end(), 25, c);
  return truth;
}

// Four blobs of radius <= 0.01 at mutual distance >= 10.
PointMatrix blobs(Rng& rng, std::vector<int>& membership) {
  const double centers[4][2] = {{0, 0}, {10, 0}, {0, 10}, {10, 10}};
  PointMatrix p(80, 2);
  membership.clear();
  for (int i = 0; i < 80; ++i) {
    const int c = (i * 7) % 4;
    membership.push_back(c);
    p(i, 0) = centers[c][0] + 0.007 * (rng.uniform() - 0.5);
    p(i, 1) = centers[c][1] + 0.007 * (rng.uniform() - 0.5);
  }
  return p;
}

}  // namespace

TEST_CASE("ARI examples") {
  const std::vector<int> a{0, 0, 1, 1};
  const std::vector<int> b{0, 1, 0, 1};
  CHECK(ari(a, b) == -0.5);
  CHECK(ari(a, a) == 1.0);
  const std::vector<int> relabeled{7, 7, 3, 3};
  CHECK(ari(a, relabeled) == 1.0);
  const std::vector<int> shorter{0, 1};
  CHECK_THROWS_AS(ari(a, shorter), LengthMismatch);
}

TEST_CASE("ARI of trivial partitions") {
  const std::vector<int> one(5, 0);
  CHECK(ari(one, one) == 1.0);
  const std::vector<int> singletons{0, 1, 2, 3, 4};
  CHECK(ari(singletons, singletons) == 1.0);
}

TEST_CASE("ARI agrees with the contingency formula, is symmetric and bounded") {
  Rng rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.below(199);
    const auto a = random_labels(n, 1 + static_cast<int>(rng.below(8)), rng);
    auto b = random_labels(n, 1 + static_cast<int>(rng.below(8)), rng);
    if (trial % 3 == 0) {
      // Correlated partitions cover the upper range.
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform() < 0.8) b[i] = a[i];
      }
    }
    const double v = ari(a, b);
    REQUIRE(v == ari(b, a));
    REQUIRE(v >= -0.5);
    REQUIRE(v <= 1.0);
    const double ref = reference_ari(a, b);
    if (std::isfinite(ref)) REQUIRE(std::abs(v - ref) < 1e-12);

    // Relabeling either argument leaves the index unchanged.
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::vector<int> pa(n);
    for (std::size_t i = 0; i < n; ++i) pa[i] = perm[static_cast<std::size_t>(a[i])] * 3 + 11;
    REQUIRE(ari(pa, b) == v);
  }
}

TEST_CASE("ARI of random labelings averages to zero") {
  const auto truth = block_labels();
  Rng rng(55);
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) sum += ari(truth, random_labels(100, 4, rng));
  CHECK(std::abs(sum / 1000) < 0.01);
}

TEST_CASE("well separated blobs are recovered exactly") {
  Rng rng(3);
  std::vector<int> membership;
  const PointMatrix p = blobs(rng, membership);
  const auto result = kmeans_best_of(p, 4, 10, 17);
  CHECK(ari(result.labels, membership) == 1.0);
}

TEST_CASE("single cluster inertia is the total squared deviation") {
  Rng rng(8);
  PointMatrix p(30, 3);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = rng.uniform();
  const Eigen::RowVectorXd mean = p.colwise().mean();
  const double total = (p.rowwise() - mean).squaredNorm();
  const auto result = kmeans_best_of(p, 1, 3, 1);
  CHECK(result.inertia == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("Lloyd iterations never increase inertia") {
  Rng data(12);
  PointMatrix p(200, 4);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = data.uniform();
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    const auto run = kmeans_once(p, 6, rng);
    REQUIRE_FALSE(run.inertia_history.empty());
    for (std::size_t i = 1; i < run.inertia_history.size(); ++i) {
      REQUIRE(run.inertia_history[i] <= run.inertia_history[i - 1] * (1 + 1e-12));
    }
    CHECK(run.inertia == doctest::Approx(inertia(p, run.labels, run.centroids)).epsilon(1e-12));
    for (int l : run.labels) REQUIRE((l >= 0 && l < 6));
  }
}

TEST_CASE("best-of selection returns the minimum inertia") {
  Rng data(13);
  PointMatrix p(150, 2);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = data.uniform();
  const auto result = kmeans_best_of(p, 5, 20, 99);
  REQUIRE(result.restart_inertias.size() == 20);
  for (double r : result.restart_inertias) CHECK(result.inertia <= r);
  CHECK(result.inertia == result.restart_inertias[result.restart]);
  CHECK(result.labels.size() == 150);
  // Seeded: identical on repeat.
  CHECK(kmeans_best_of(p, 5, 20, 99).labels == result.labels);
}

TEST_CASE("too few distinct points is degenerate") {
  PointMatrix p(5, 2);
  p.setZero();
  p(4, 0) = 1.0;
  CHECK_THROWS_AS(kmeans_best_of(p, 3, 5, 0), DegenerateInput);
  CHECK_NOTHROW(kmeans_best_of(p, 2, 5, 0));
}

TEST_CASE("embedding conversion keeps the layout") {
  EmbeddingMatrix e(2, 3);
  for (std::size_t i = 0; i < 6; ++i) e.data()[i] = static_cast<double>(i);
  const PointMatrix p = to_points(e);
  CHECK(p.rows() == 2);
  CHECK(p(1, 0) == 3.0);
  CHECK(p(0, 2) == 2.0);
}
