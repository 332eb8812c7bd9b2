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
#include "qcw/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qcw/errors.hpp"
#include "qcw/random.hpp"

namespace qcw {

namespace {

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::span<const Edge> edges) : adjacency_(node_count) {
  if (node_count < 2) throw InvalidGraph("graph needs at least two nodes");
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw InvalidGraph("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") references a node outside [0," + std::to_string(node_count) + ")");
    }
    if (e.u == e.v) throw InvalidGraph("self-loop on node " + std::to_string(e.u));
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw InvalidGraph("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has non-positive or non-finite weight");
    }
    adjacency_[e.u].push_back({e.v, e.weight});
    adjacency_[e.v].push_back({e.u, e.weight});
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& row = adjacency_[v];
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    auto dup = std::adjacent_find(row.begin(), row.end(),
                                  [](const Neighbor& a, const Neighbor& b) { return a.node == b.node; });
    if (dup != row.end()) {
      throw InvalidGraph("duplicate edge (" + std::to_string(v) + "," + std::to_string(dup->node) + ")");
    }
  }
  edge_count_ = edges.size();
  if (!is_connected(node_count, edges)) throw InvalidGraph("graph is not connected");
}

std::span<const Neighbor> Graph::neighbors(NodeId v) const {
  if (v >= adjacency_.size()) throw InvalidArgument("node " + std::to_string(v) + " out of range");
  return adjacency_[v];
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t k = 0;
  for (const auto& row : adjacency_) k = std::max(k, row.size());
  return k;
}

double Graph::weight(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& n, NodeId id) { return n.node < id; });
  return (it != row.end() && it->node == v) ? it->weight : 0.0;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (const Neighbor& n : adjacency_[u]) {
      if (u < n.node) out.push_back({u, n.node, n.weight});
    }
  }
  return out;
}

bool is_connected(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) return false;
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = node_count;
  for (const Edge& e : edges) {
    auto a = find(e.u);
    auto b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

CommunityLabels::CommunityLabels(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("community labels must not be empty");
  int max_label = -1;
  for (int l : labels_) {
    if (l < 0) throw InvalidArgument("community labels must be non-negative");
    max_label = std::max(max_label, l);
  }
  community_count_ = max_label + 1;
  std::vector<bool> seen(static_cast<std::size_t>(community_count_), false);
  for (int l : labels_) seen[static_cast<std::size_t>(l)] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidArgument("every community in [0, C) must have at least one member");
  }
}

std::size_t ClusteredErSpec::node_count() const noexcept {
  return std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), std::size_t{0});
}

void ClusteredErSpec::validate() const {
  if (cluster_sizes.empty()) throw InvalidArgument("cluster_sizes must not be empty");
  for (auto s : cluster_sizes) {
    if (s == 0) throw InvalidArgument("cluster sizes must be positive");
  }
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(p_intra)) throw InvalidArgument("p_intra must lie in [0,1]");
  if (!in_unit(p_inter)) throw InvalidArgument("p_inter must lie in [0,1]");
  if (max_attempts == 0) throw InvalidArgument("max_attempts must be positive");
}

namespace {

std::vector<int> cluster_labels(const ClusteredErSpec& spec) {
  std::vector<int> labels;
  labels.reserve(spec.node_count());
  for (std::size_t c = 0; c < spec.cluster_sizes.size(); ++c) {
    labels.insert(labels.end(), spec.cluster_sizes[c], static_cast<int>(c));
  }
  return labels;
}

void sample_edges_into(const std::vector<int>& labels, double p_intra, double p_inter, Rng& rng,
                       std::vector<Edge>& edges) {
  const auto n = static_cast<NodeId>(labels.size());
  edges.clear();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = labels[u] == labels[v] ? p_intra : p_inter;
      if (rng.uniform() < p) edges.push_back({u, v, 1.0});
    }
  }
}

}  // namespace

std::vector<Edge> sample_clustered_er_edges(const ClusteredErSpec& spec, Rng& rng) {
  spec.validate();
  std::vector<Edge> edges;
  sample_edges_into(cluster_labels(spec), spec.p_intra, spec.p_inter, rng, edges);
  return edges;
}

LabeledGraph generate_clustered_er(const ClusteredErSpec& spec) {
  spec.validate();
  const std::size_t n = spec.node_count();
  const std::vector<int> labels = cluster_labels(spec);
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Rng rng(derive_seed(spec.seed, {hash_tag("clustered-er"), attempt}));
    sample_edges_into(labels, spec.p_intra, spec.p_inter, rng, edges);
    if (n >= 2 && is_connected(n, edges)) {
      return {Graph(n, edges), CommunityLabels(labels)};
    }
  }
  throw ConnectivityFailure("no connected sample after " + std::to_string(spec.max_attempts) +
                            " attempts");
}

void save_edge_list(const Graph& g, const std::optional<CommunityLabels>& labels,
                    const std::filesystem::path& path, std::span<const std::string> header_lines) {
  if (labels && labels->size() != g.node_count()) {
    throw InvalidArgument("label count does not match node count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  out << "#nodes " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << '\t' << e.v << '\t' << format_weight(e.weight) << '\n';
  if (labels) {
    for (std::size_t v = 0; v < labels->size(); ++v) out << "#label\t" << v << '\t' << (*labels)[v] << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : rest_(line), line_no_(line_no) {}

  template <class T>
  T next(const char* what) {
    auto tok = token();
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail(std::string("expected ") + what + ", got '" + std::string(tok) + "'");
    }
    return value;
  }

  void expect_end() {
    if (!token().empty()) fail("unexpected trailing field");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + msg);
  }

 private:
  std::string_view token() {
    std::size_t b = rest_.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
      rest_ = {};
      return {};
    }
    rest_.remove_prefix(b);
    std::size_t e = rest_.find_first_of(" \t\r");
    auto tok = rest_.substr(0, e);
    rest_.remove_prefix(e == std::string_view::npos ? rest_.size() : e);
    return tok;
  }

  std::string_view rest_;
  std::size_t line_no_;
};

}  // namespace

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  std::optional<std::size_t> node_count;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, int>> label_lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (view.empty() || view.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (view.starts_with("# ")) continue;
    if (view.starts_with("#nodes")) {
      LineParser p(view.substr(6), line_no);
      if (node_count) p.fail("duplicate #nodes header");
      node_count = p.next<std::size_t>("node count");
      p.expect_end();
    } else if (view.starts_with("#label")) {
      LineParser p(view.substr(6), line_no);
      auto node = p.next<std::size_t>("node id");
      auto community = p.next<int>("community id");
      p.expect_end();
      label_lines.emplace_back(node, community);
    } else if (view.starts_with('#')) {
      LineParser(view, line_no).fail("unknown directive");
    } else {
      LineParser p(view, line_no);
      if (!node_count) p.fail("edge before #nodes header");
      auto u = p.next<NodeId>("node id");
      auto v = p.next<NodeId>("node id");
      auto w = p.next<double>("weight");
      p.expect_end();
      if (u >= *node_count || v >= *node_count) p.fail("node id out of range");
      if (u >= v) p.fail("edge endpoints must satisfy u < v");
      edges.push_back({u, v, w});
    }
  }
  if (!node_count) throw ParseError("line " + std::to_string(line_no) + ": missing #nodes header");

  std::optional<CommunityLabels> labels;
  if (!label_lines.empty()) {
    if (label_lines.size() != *node_count) {
      throw ParseError("expected " + std::to_string(*node_count) + " label lines, found " +
                       std::to_string(label_lines.size()));
    }
    std::vector<int> values(*node_count, -1);
    for (auto [node, community] : label_lines) {
      if (node >= *node_count || values[node] != -1) {
        throw ParseError("invalid or repeated label for node " + std::to_string(node));
      }
      values[node] = community;
    }
    try {
      labels.emplace(std::move(values));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  try {
    return {Graph(*node_count, edges), std::move(labels)};
  } catch (const InvalidGraph& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace qcw
