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
#include "qcw/classical_walks.hpp"

#include <cmath>

#include "parallel.hpp"
#include "qcw/errors.hpp"

namespace qcw {

void FirstOrderParams::validate() const {
  if (walk_length < 1) throw InvalidArgument("walk_length must be at least 1");
  if (walks_per_node < 1) throw InvalidArgument("walks_per_node must be at least 1");
}

void SecondOrderParams::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) throw InvalidArgument("p must be positive and finite");
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("q must be positive and finite");
  if (walk_length < 1) throw InvalidArgument("walk_length must be at least 1");
  if (walks_per_node < 1) throw InvalidArgument("walks_per_node must be at least 1");
}

TransitionDistribution first_order_distribution(const Graph& g, NodeId v) {
  auto nbrs = g.neighbors(v);
  TransitionDistribution dist;
  dist.reserve(nbrs.size());
  const double p = 1.0 / static_cast<double>(nbrs.size());
  for (const Neighbor& n : nbrs) dist.push_back({n.node, p});
  return dist;
}

double second_order_bias(int hop_distance, double p, double q) {
  switch (hop_distance) {
    case 0:
      return 1.0 / p;
    case 1:
      return 1.0;
    case 2:
      return 1.0 / q;
    default:
      throw DomainError("hop distance must be 0, 1 or 2, got " + std::to_string(hop_distance));
  }
}

TransitionDistribution second_order_distribution(const Graph& g, NodeId previous, NodeId current,
                                                 double p, double q) {
  if (previous == current) return first_order_distribution(g, current);
  if (!g.adjacent(previous, current)) {
    throw InvalidArgument("previous and current nodes must be adjacent");
  }
  auto nbrs = g.neighbors(current);
  TransitionDistribution dist;
  dist.reserve(nbrs.size());
  double total = 0.0;
  for (const Neighbor& n : nbrs) {
    const int d = n.node == previous ? 0 : (g.adjacent(previous, n.node) ? 1 : 2);
    const double score = second_order_bias(d, p, q) * n.weight;
    dist.push_back({n.node, score});
    total += score;
  }
  for (auto& t : dist) t.probability /= total;
  return dist;
}

NodeId sample_transition(const TransitionDistribution& dist, double u) {
  double cumulative = 0.0;
  for (const auto& t : dist) {
    cumulative += t.probability;
    if (u < cumulative) return t.node;
  }
  return dist.back().node;
}

Walk generate_walk(const Graph& g, NodeId start, const FirstOrderParams& params, Rng& rng) {
  Walk walk;
  walk.reserve(params.walk_length + 1);
  walk.push_back(start);
  NodeId current = start;
  for (std::size_t step = 0; step < params.walk_length; ++step) {
    auto nbrs = g.neighbors(current);
    current = nbrs[rng.below(nbrs.size())].node;
    walk.push_back(current);
  }
  return walk;
}

Walk generate_walk(const Graph& g, NodeId start, const SecondOrderParams& params, Rng& rng) {
  Walk walk;
  walk.reserve(params.walk_length + 1);
  walk.push_back(start);
  NodeId previous = start;
  NodeId current = start;
  for (std::size_t step = 0; step < params.walk_length; ++step) {
    const NodeId next = sample_transition(second_order_distribution(g, previous, current, params.p, params.q),
                                          rng.uniform());
    previous = current;
    current = next;
    walk.push_back(current);
  }
  return walk;
}

std::uint64_t walk_seed(std::uint64_t master, NodeId start, std::size_t index) noexcept {
  return derive_seed(master, {hash_tag("walk"), start, index});
}

namespace {

template <class Params>
WalkCorpus corpus_impl(const Graph& g, const Params& params, std::size_t threads) {
  params.validate();
  const std::size_t n = g.node_count();
  WalkCorpus corpus;
  corpus.walks.resize(n * params.walks_per_node);
  detail::parallel_for(corpus.walks.size(), threads, [&](std::size_t i) {
    const auto start = static_cast<NodeId>(i / params.walks_per_node);
    Rng rng(walk_seed(params.seed, start, i % params.walks_per_node));
    corpus.walks[i] = generate_walk(g, start, params, rng);
  });
  return corpus;
}

}  // namespace

WalkCorpus generate_corpus(const Graph& g, const FirstOrderParams& params, std::size_t threads) {
  return corpus_impl(g, params, threads);
}

WalkCorpus generate_corpus(const Graph& g, const SecondOrderParams& params, std::size_t threads) {
  return corpus_impl(g, params, threads);
}

}  // namespace qcw
