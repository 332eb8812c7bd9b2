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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qcw {

using NodeId = std::uint32_t;

struct Neighbor {
  NodeId node;
  double weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected edge with u < v after normalization.
struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected weighted simple graph.
///
/// Construction validates the invariants the walkers rely on: symmetric
/// adjacency, no self-loops, strictly positive finite weights, no duplicate
/// edges, at least two nodes, and connectivity. Neighbor lists are sorted by
/// node id.
class Graph {
 public:
  Graph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Neighbor> neighbors(NodeId v) const;

  /// Unweighted degree k_v (number of neighbors).
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }
  std::size_t max_degree() const noexcept;

  /// w_uv, or 0 when u and v are not adjacent.
  double weight(NodeId u, NodeId v) const;
  bool adjacent(NodeId u, NodeId v) const { return weight(u, v) > 0.0; }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// True when the undirected graph on node_count nodes spanned by edges is
/// connected. Endpoints are assumed in range.
bool is_connected(std::size_t node_count, std::span<const Edge> edges);

/// Ground-truth community assignment, labels in [0, community_count).
class CommunityLabels {
 public:
  CommunityLabels() = default;
  explicit CommunityLabels(std::vector<int> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  int community_count() const noexcept { return community_count_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& values() const noexcept { return labels_; }

  friend bool operator==(const CommunityLabels&, const CommunityLabels&) = default;

 private:
  std::vector<int> labels_;
  int community_count_ = 0;
};

struct ClusteredErSpec {
  std::vector<std::size_t> cluster_sizes{15, 15, 15, 55};
  double p_intra = 0.25;
  double p_inter = 0.0015;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 1000;

  std::size_t node_count() const noexcept;
  void validate() const;
};

struct LabeledGraph {
  Graph graph;
  CommunityLabels labels;
};

class Rng;

/// One draw of the clustered edge model: every intra-cluster pair is an edge
/// with probability p_intra and every inter-cluster pair with p_inter. The
/// result may be disconnected.
std::vector<Edge> sample_clustered_er_edges(const ClusteredErSpec& spec, Rng& rng);

/// Samples a union of Erdos-Renyi clusters. Nodes are numbered in cluster
/// order, so communities are contiguous blocks. Disconnected samples are
/// rejected and redrawn from a fresh sub-seed, up to max_attempts times.
/// Throws ConnectivityFailure when no connected sample was found.
LabeledGraph generate_clustered_er(const ClusteredErSpec& spec);

/// Writes the tab-separated edge-list format: "#nodes N", one "u<TAB>v<TAB>w"
/// line per edge (u < v), then "#label<TAB>node<TAB>community" lines.
/// Optional header lines are written first, each prefixed with "# ".
void save_edge_list(const Graph& g, const std::optional<CommunityLabels>& labels,
                    const std::filesystem::path& path,
                    std::span<const std::string> header_lines = {});

struct LoadedGraph {
  Graph graph;
  std::optional<CommunityLabels> labels;
};

/// Parses a file written by save_edge_list. Lines starting with "# " are
/// comments. Throws IoError or ParseError (message names the line number).
LoadedGraph load_edge_list(const std::filesystem::path& path);

}  // namespace qcw
