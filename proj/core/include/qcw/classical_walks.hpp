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
#include <vector>

#include "qcw/corpus.hpp"
#include "qcw/graph.hpp"
#include "qcw/random.hpp"

namespace qcw {

struct Transition {
  NodeId node;
  double probability;
};

/// Distribution over the neighbors of a node, in ascending node order.
using TransitionDistribution = std::vector<Transition>;

struct FirstOrderParams {
  std::size_t walk_length = 10;  // steps; a walk has walk_length + 1 tokens
  std::size_t walks_per_node = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// node2vec-style parameters: p controls returning to the previous node,
/// q controls moving outward.
struct SecondOrderParams {
  double p = 4.0;
  double q = 0.1;
  std::size_t walk_length = 10;
  std::size_t walks_per_node = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Uniform over neighbors: P(u) = 1/k_v, ignoring weights.
TransitionDistribution first_order_distribution(const Graph& g, NodeId v);

/// Bias factor for hop distance d between the previous node and a candidate:
/// 1/p for d = 0, 1 for d = 1, 1/q for d = 2. Throws DomainError otherwise.
double second_order_bias(int hop_distance, double p, double q);

/// P(x | current, previous) proportional to bias(d_{prev,x}) * w_{current,x}.
/// previous == current selects the first-order rule (no history yet).
TransitionDistribution second_order_distribution(const Graph& g, NodeId previous, NodeId current,
                                                 double p, double q);

/// Inverse-CDF draw; returns the first entry whose cumulative mass exceeds u.
NodeId sample_transition(const TransitionDistribution& dist, double u);

Walk generate_walk(const Graph& g, NodeId start, const FirstOrderParams& params, Rng& rng);
/// The first step uses the first-order rule since no previous node exists.
Walk generate_walk(const Graph& g, NodeId start, const SecondOrderParams& params, Rng& rng);

/// walks_per_node walks from every node, ordered by (start node, walk index).
/// Each walk draws from its own stream derived from (seed, start, index), so
/// the corpus does not depend on the thread count.
WalkCorpus generate_corpus(const Graph& g, const FirstOrderParams& params, std::size_t threads = 1);
WalkCorpus generate_corpus(const Graph& g, const SecondOrderParams& params, std::size_t threads = 1);

std::uint64_t walk_seed(std::uint64_t master, NodeId start, std::size_t index) noexcept;

}  // namespace qcw
