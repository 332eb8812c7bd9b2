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
#include <cmath>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "qcw/classical_walks.hpp"
#include "qcw/errors.hpp"
#include "qcw/random.hpp"
#include "qcw/skipgram.hpp"
#include "unit/test_support.hpp"

using namespace qcw;
using namespace qcw::testing;

namespace {

using Vec = std::vector<double>;

double log_sigmoid(double x) { return -std::log1p(std::exp(-x)); }

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Direct evaluation of the objective, used as the finite-difference oracle.
double objective(const Vec& u, const Vec& c, const std::vector<Vec>& neg) {
  double loss = -log_sigmoid(dot(u, c));
  for (const Vec& n : neg) loss -= log_sigmoid(-dot(u, n));
  return loss;
}

SgnsGradient evaluate(const Vec& u, const Vec& c, const std::vector<Vec>& neg) {
  std::vector<std::span<const double>> spans(neg.begin(), neg.end());
  return sgns_loss_and_grad(u, c, spans);
}

double relative_error(const Vec& a, const Vec& b) {
  double diff = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

template <class F>
Vec central_difference(Vec x, F f, double eps = 1e-5) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + eps;
    const double up = f(x);
    x[i] = keep - eps;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2 * eps);
  }
  return g;
}

Vec random_vector(std::size_t d, Rng& rng, double scale) {
  Vec v(d);
  for (double& x : v) x = scale * (2 * rng.uniform() - 1);
  return v;
}

Graph two_cliques() {
  std::vector<Edge> e;
  for (NodeId base : {0u, 5u}) {
    for (NodeId i = 0; i < 5; ++i) {
      for (NodeId j = i + 1; j < 5; ++j) e.push_back({base + i, base + j});
    }
  }
  e.push_back({4, 5});
  return Graph(10, e);
}

}  // namespace

TEST_CASE("pair enumeration") {
  WalkCorpus c{{{0, 1, 2}}};
  CHECK(build_pairs(c, 1) == std::vector<NodePair>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});

  WalkCorpus longer{{{0, 1, 2, 3, 4, 5}}};
  CHECK(build_pairs(longer, 5).size() == 6 * 5);
  CHECK(build_pairs(longer, 9).size() == 6 * 5);

  Walk w(11);
  for (NodeId i = 0; i < 11; ++i) w[i] = i;
  std::size_t from_center = 0;
  for (const auto& [center, context] : build_pairs(WalkCorpus{{w}}, 5)) from_center += center == 5;
  CHECK(from_center == 10);
}

TEST_CASE("loss at zero scores is two log two") {
  const Vec zero(4, 0.0);
  const auto g = evaluate(zero, zero, {zero});
  CHECK(g.loss == doctest::Approx(2 * std::numbers::ln2).epsilon(1e-15));
  CHECK(g.loss == doctest::Approx(1.386294).epsilon(1e-6));
}

TEST_CASE("loss vanishes for confident scores") {
  const Vec u{10.0, 0.0};
  const Vec c{10.0, 0.0};
  const Vec n{-10.0, 0.0};
  CHECK(evaluate(u, c, {n}).loss < 1e-40);
  // Large negative margins stay finite.
  const Vec bad{-30.0, 0.0};
  const auto g = evaluate(u, bad, {c});
  CHECK(std::isfinite(g.loss));
  CHECK(g.loss == doctest::Approx(400.0).epsilon(1e-9));
}

TEST_CASE("analytic gradients match central differences") {
  Rng rng(2718);
  for (int draw = 0; draw < 200; ++draw) {
    const std::size_t d = 2 + rng.below(15);
    const std::size_t k = 1 + rng.below(6);
    const double scale = draw % 2 == 0 ? 0.5 : 1.5;
    const Vec u = random_vector(d, rng, scale);
    const Vec c = random_vector(d, rng, scale);
    std::vector<Vec> neg;
    for (std::size_t n = 0; n < k; ++n) neg.push_back(random_vector(d, rng, scale));
    const auto g = evaluate(u, c, neg);
    REQUIRE(g.loss == doctest::Approx(objective(u, c, neg)).epsilon(1e-12));
    CHECK(relative_error(g.center, central_difference(u, [&](const Vec& x) { return objective(x, c, neg); })) < 1e-4);
    CHECK(relative_error(g.context, central_difference(c, [&](const Vec& x) { return objective(u, x, neg); })) < 1e-4);
    for (std::size_t n = 0; n < k; ++n) {
      auto fd = central_difference(neg[n], [&](const Vec& x) {
        auto copy = neg;
        copy[n] = x;
        return objective(u, c, copy);
      });
      CHECK(relative_error(g.negatives[n], fd) < 1e-4);
    }
  }
}

TEST_CASE("embeddings separate two weakly linked cliques") {
  FirstOrderParams walks;
  walks.walks_per_node = 20;
  walks.seed = 3;
  const auto corpus = generate_corpus(two_cliques(), walks);
  SkipGramParams params;
  params.dimension = 8;
  params.window = 3;
  params.seed = 11;
  const auto emb = train(corpus, params).input;
  double intra = 0.0;
  double inter = 0.0;
  int n_intra = 0;
  int n_inter = 0;
  for (NodeId a = 0; a < 10; ++a) {
    for (NodeId b = a + 1; b < 10; ++b) {
      const double s = cosine_similarity(emb.row(a), emb.row(b));
      if ((a < 5) == (b < 5)) {
        intra += s;
        ++n_intra;
      } else {
        inter += s;
        ++n_inter;
      }
    }
  }
  CHECK(intra / n_intra > inter / n_inter);
}

TEST_CASE("training on the default clustered graph") {
  ClusteredErSpec spec;
  spec.seed = 1;
  const Graph g = generate_clustered_er(spec).graph;
  SecondOrderParams walks;
  walks.seed = 2;
  const auto corpus = generate_corpus(g, walks);
  SkipGramParams params;
  params.dimension = 16;
  params.seed = 5;
  const auto trained = train(corpus, params);
  CHECK(trained.input.rows() == 100);
  CHECK(trained.input.dimension() == 16);
  REQUIRE(trained.epoch_mean_loss.size() == 5);
  for (int e = 1; e < 3; ++e) CHECK(trained.epoch_mean_loss[e] <= 1.01 * trained.epoch_mean_loss[e - 1]);
  for (double x : trained.input.data()) REQUIRE(std::isfinite(x));
  // Bit-identical when repeated.
  CHECK(train(corpus, params).input == trained.input);
  params.seed = 6;
  CHECK_FALSE(train(corpus, params).input == trained.input);
}

TEST_CASE("initial loss is close to six log two with five negatives") {
  ClusteredErSpec spec;
  spec.seed = 1;
  FirstOrderParams walks;
  const auto corpus = generate_corpus(generate_clustered_er(spec).graph, walks);
  SkipGramParams params;
  params.epochs = 1;
  params.learning_rate = 1e-9;
  const double loss = train(corpus, params).epoch_mean_loss.at(0);
  CHECK(std::abs(loss / (6 * std::numbers::ln2) - 1.0) < 0.05);
}

TEST_CASE("every node receives an embedding") {
  FirstOrderParams walks;
  const auto corpus = generate_corpus(cycle_graph(7), walks);
  SkipGramParams params;
  params.dimension = 4;
  const auto e = train(corpus, params, 7).input;
  CHECK(e.rows() == 7);
  for (NodeId v = 0; v < 7; ++v) {
    double norm = 0.0;
    for (double x : e.row(v)) norm += x * x;
    CHECK(norm > 0.0);
  }
}

TEST_CASE("concurrent mode produces finite embeddings") {
  FirstOrderParams walks;
  walks.walks_per_node = 10;
  const auto corpus = generate_corpus(two_cliques(), walks);
  SkipGramParams params;
  params.dimension = 8;
  params.deterministic = false;
  params.threads = 4;
  const auto e = train(corpus, params).input;
  CHECK(e.rows() == 10);
  for (double x : e.data()) REQUIRE(std::isfinite(x));
}

TEST_CASE("parameter validation") {
  SkipGramParams p;
  p.dimension = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.window = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.learning_rate = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  CHECK_THROWS_AS(train(WalkCorpus{}, SkipGramParams{}), InvalidArgument);
}

TEST_CASE("embedding CSV round trip and errors") {
  TempDir dir;
  EmbeddingMatrix e(3, 2);
  const double vals[] = {0.1, -1.0 / 3.0, 2.5e-300, 7.0, -0.0, 1e17};
  std::copy(std::begin(vals), std::end(vals), e.data().begin());
  const std::vector<std::string> header{"config-hash=1 seed=2 version=0.1.0"};
  save_embeddings(e, dir / "e.csv", header);
  CHECK(load_embeddings(dir / "e.csv") == e);
  {
    std::ifstream in(dir / "e.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# ", 0) == 0);
    std::getline(in, line);
    CHECK(line == "node,e0,e1");
  }
  {
    std::ofstream out(dir / "bad.csv");
    out << "node,e0,e1\n0,1.0,2.0\n1,3.0\n";
  }
  CHECK_THROWS_AS(load_embeddings(dir / "bad.csv"), ParseError);
  CHECK_THROWS_AS(load_embeddings(dir / "nope.csv"), IoError);
}

TEST_CASE("training log layout") {
  TempDir dir;
  const std::vector<double> losses{4.0, 3.5};
  save_training_log(losses, dir / "log.csv");
  std::ifstream in(dir / "log.csv");
  std::string a, b, c;
  std::getline(in, a);
  std::getline(in, b);
  std::getline(in, c);
  CHECK(a == "epoch,mean_loss");
  CHECK(b.rfind("0,4", 0) == 0);
  CHECK(c.rfind("1,3.5", 0) == 0);
}
