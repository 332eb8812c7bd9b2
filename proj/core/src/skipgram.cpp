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
#include "qcw/skipgram.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string_view>
#include <thread>

#include "qcw/errors.hpp"
#include "qcw/random.hpp"

namespace qcw {

namespace {

double log_sigmoid(double x) {
  // Stable for large |x|.
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Shared kernel: gradients are written to caller buffers so the training
// loop and sgns_loss_and_grad evaluate identical arithmetic.
// grad_negatives is laid out as negatives.size() consecutive rows.
double sgns_kernel(std::span<const double> center, std::span<const double> context,
                   std::span<const std::span<const double>> negatives, std::span<double> grad_center,
                   std::span<double> grad_context, std::span<double> grad_negatives) {
  const std::size_t d = center.size();
  const double s = dot(center, context);
  double loss = -log_sigmoid(s);
  const double g_pos = sigmoid(s) - 1.0;  // d loss / d s
  for (std::size_t i = 0; i < d; ++i) {
    grad_center[i] = g_pos * context[i];
    grad_context[i] = g_pos * center[i];
  }
  for (std::size_t n = 0; n < negatives.size(); ++n) {
    const auto neg = negatives[n];
    const double sn = dot(center, neg);
    loss -= log_sigmoid(-sn);
    const double g_neg = sigmoid(sn);  // d loss / d sn
    for (std::size_t i = 0; i < d; ++i) {
      grad_center[i] += g_neg * neg[i];
      grad_negatives[n * d + i] = g_neg * center[i];
    }
  }
  return loss;
}

class NoiseSampler {
 public:
  NoiseSampler(const WalkCorpus& corpus, std::size_t node_count) : cumulative_(node_count) {
    std::vector<double> counts(node_count, 0.0);
    for (const auto& w : corpus.walks) {
      for (NodeId v : w) counts[v] += 1.0;
    }
    double total = 0.0;
    for (std::size_t v = 0; v < node_count; ++v) {
      total += std::pow(counts[v], 0.75);
      cumulative_[v] = total;
    }
    for (auto& c : cumulative_) c /= total;
  }

  NodeId draw(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<NodeId>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

NodeId draw_negative(const NoiseSampler& noise, Rng& rng, NodeId context) {
  // Redraw collisions with the positive context, as word2vec skips them.
  NodeId v = noise.draw(rng);
  for (int attempt = 0; attempt < 16 && v == context; ++attempt) v = noise.draw(rng);
  return v;
}

void init_uniform(EmbeddingMatrix& m, Rng& rng) {
  const double half = 0.5 / static_cast<double>(m.dimension());
  for (double& x : m.data()) x = (2.0 * rng.uniform() - 1.0) * half;
}

double learning_rate_at(double base, std::size_t processed, std::size_t total) {
  const double progress = total ? static_cast<double>(processed) / static_cast<double>(total) : 0.0;
  return base * (1.0 - (1.0 - 1e-4) * std::min(progress, 1.0));
}

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

void train_sequential(const std::vector<NodePair>& pairs, const NoiseSampler& noise, const SkipGramParams& params,
                      TrainedEmbeddings& out) {
  const std::size_t d = params.dimension;
  const std::size_t k = params.negatives;
  const std::size_t total = pairs.size() * params.epochs;
  Rng neg_rng(derive_seed(params.seed, {hash_tag("sgns-negatives")}));
  std::vector<double> g_center(d), g_context(d), g_neg(k * d);
  std::vector<NodeId> neg_ids(k);
  std::vector<std::span<const double>> neg_rows(k);
  std::vector<std::size_t> order(pairs.size());
  std::size_t processed = 0;

  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(derive_seed(params.seed, {hash_tag("sgns-shuffle"), epoch}));
    shuffle(order, shuffle_rng);
    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      const auto [center, context] = pairs[idx];
      const double lr = learning_rate_at(params.learning_rate, processed++, total);
      for (std::size_t n = 0; n < k; ++n) {
        neg_ids[n] = draw_negative(noise, neg_rng, context);
        neg_rows[n] = out.output.row(neg_ids[n]);
      }
      const double loss = sgns_kernel(out.input.row(center), out.output.row(context), neg_rows, g_center,
                                      g_context, g_neg);
      if (!std::isfinite(loss)) throw NonFiniteLoss("loss became non-finite in epoch " + std::to_string(epoch));
      loss_sum += loss;
      auto u = out.input.row(center);
      auto c = out.output.row(context);
      for (std::size_t i = 0; i < d; ++i) {
        u[i] -= lr * g_center[i];
        c[i] -= lr * g_context[i];
      }
      for (std::size_t n = 0; n < k; ++n) {
        auto row = out.output.row(neg_ids[n]);
        for (std::size_t i = 0; i < d; ++i) row[i] -= lr * g_neg[n * d + i];
      }
    }
    const double mean = pairs.empty() ? 0.0 : loss_sum / static_cast<double>(pairs.size());
    if (!std::isfinite(mean)) throw NonFiniteLoss("epoch mean loss is non-finite");
    out.epoch_mean_loss.push_back(mean);
  }
}

// Hogwild-style updates: workers share the matrices through relaxed atomic
// accesses. Results depend on scheduling.
void train_concurrent(const std::vector<NodePair>& pairs, const NoiseSampler& noise, const SkipGramParams& params,
                      TrainedEmbeddings& out) {
  const std::size_t d = params.dimension;
  const std::size_t k = params.negatives;
  const std::size_t total = pairs.size() * params.epochs;
  const std::size_t workers = std::max<std::size_t>(1, params.threads);
  std::atomic<std::size_t> processed{0};
  std::vector<std::size_t> order(pairs.size());

  auto load_row = [d](std::span<double> src, std::span<double> dst) {
    for (std::size_t i = 0; i < d; ++i) dst[i] = std::atomic_ref<double>(src[i]).load(std::memory_order_relaxed);
  };
  auto add_row = [d](std::span<double> dst, const double* grad, double scale) {
    for (std::size_t i = 0; i < d; ++i) {
      std::atomic_ref<double>(dst[i]).fetch_add(-scale * grad[i], std::memory_order_relaxed);
    }
  };

  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(derive_seed(params.seed, {hash_tag("sgns-shuffle"), epoch}));
    shuffle(order, shuffle_rng);
    std::vector<double> loss_sums(workers, 0.0);
    std::vector<std::thread> pool;
    std::atomic<bool> diverged{false};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Rng rng(derive_seed(params.seed, {hash_tag("sgns-worker"), epoch, w}));
        std::vector<double> u(d), c(d), negs(k * d), g_center(d), g_context(d), g_neg(k * d);
        std::vector<NodeId> neg_ids(k);
        std::vector<std::span<const double>> neg_rows(k);
        const std::size_t begin = order.size() * w / workers;
        const std::size_t end = order.size() * (w + 1) / workers;
        for (std::size_t j = begin; j < end && !diverged.load(std::memory_order_relaxed); ++j) {
          const auto [center, context] = pairs[order[j]];
          const double lr = learning_rate_at(params.learning_rate, processed.fetch_add(1), total);
          load_row(out.input.row(center), u);
          load_row(out.output.row(context), c);
          for (std::size_t n = 0; n < k; ++n) {
            neg_ids[n] = draw_negative(noise, rng, context);
            load_row(out.output.row(neg_ids[n]), std::span<double>(negs.data() + n * d, d));
            neg_rows[n] = std::span<const double>(negs.data() + n * d, d);
          }
          const double loss = sgns_kernel(u, c, neg_rows, g_center, g_context, g_neg);
          if (!std::isfinite(loss)) {
            diverged = true;
            break;
          }
          loss_sums[w] += loss;
          add_row(out.input.row(center), g_center.data(), lr);
          add_row(out.output.row(context), g_context.data(), lr);
          for (std::size_t n = 0; n < k; ++n) add_row(out.output.row(neg_ids[n]), g_neg.data() + n * d, lr);
        }
      });
    }
    for (auto& t : pool) t.join();
    if (diverged) throw NonFiniteLoss("loss became non-finite in epoch " + std::to_string(epoch));
    const double sum = std::accumulate(loss_sums.begin(), loss_sums.end(), 0.0);
    out.epoch_mean_loss.push_back(pairs.empty() ? 0.0 : sum / static_cast<double>(pairs.size()));
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void SkipGramParams::validate() const {
  if (dimension < 1) throw InvalidArgument("embedding dimension must be at least 1");
  if (window < 1) throw InvalidArgument("window must be at least 1");
  if (negatives < 1) throw InvalidArgument("negatives must be at least 1");
  if (epochs < 1) throw InvalidArgument("epochs must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw InvalidArgument("learning rate must be positive");
}

std::vector<NodePair> build_pairs(const WalkCorpus& corpus, std::size_t window) {
  std::vector<NodePair> pairs;
  for (const auto& walk : corpus.walks) {
    const std::size_t len = walk.size();
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t lo = i >= window ? i - window : 0;
      const std::size_t hi = std::min(len - 1, i + window);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j != i) pairs.emplace_back(walk[i], walk[j]);
      }
    }
  }
  return pairs;
}

SgnsGradient sgns_loss_and_grad(std::span<const double> center, std::span<const double> context,
                                std::span<const std::span<const double>> negatives) {
  const std::size_t d = center.size();
  if (context.size() != d) throw InvalidArgument("context vector dimension mismatch");
  for (const auto& n : negatives) {
    if (n.size() != d) throw InvalidArgument("negative vector dimension mismatch");
  }
  SgnsGradient out;
  out.center.resize(d);
  out.context.resize(d);
  std::vector<double> flat(negatives.size() * d);
  out.loss = sgns_kernel(center, context, negatives, out.center, out.context, flat);
  out.negatives.resize(negatives.size());
  for (std::size_t n = 0; n < negatives.size(); ++n) {
    out.negatives[n].assign(flat.begin() + static_cast<std::ptrdiff_t>(n * d),
                            flat.begin() + static_cast<std::ptrdiff_t>((n + 1) * d));
  }
  return out;
}

TrainedEmbeddings train(const WalkCorpus& corpus, const SkipGramParams& params, std::size_t node_count) {
  params.validate();
  if (corpus.walks.empty()) throw InvalidArgument("corpus must not be empty");
  const std::size_t bound = corpus.vocabulary_bound();
  if (node_count == 0) node_count = bound;
  if (bound > node_count) throw InvalidArgument("corpus references nodes beyond node_count");

  TrainedEmbeddings out{EmbeddingMatrix(node_count, params.dimension), EmbeddingMatrix(node_count, params.dimension),
                        {}};
  Rng init_rng(derive_seed(params.seed, {hash_tag("sgns-init")}));
  init_uniform(out.input, init_rng);
  init_uniform(out.output, init_rng);

  const auto pairs = build_pairs(corpus, params.window);
  const NoiseSampler noise(corpus, node_count);
  if (params.deterministic || params.threads <= 1) {
    train_sequential(pairs, noise, params, out);
  } else {
    train_concurrent(pairs, noise, params, out);
  }
  return out;
}

void save_embeddings(const EmbeddingMatrix& e, const std::filesystem::path& path,
                     std::span<const std::string> header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  out << "node";
  for (std::size_t j = 0; j < e.dimension(); ++j) out << ",e" << j;
  out << '\n';
  for (std::size_t i = 0; i < e.rows(); ++i) {
    out << i;
    for (double x : e.row(i)) out << ',' << format_double(x);
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<double> values;
  std::size_t rows = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with('#')) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (columns == 0) {
      if (fields.size() < 2 || fields[0] != "node") fail("expected header node,e0,...");
      for (std::size_t j = 1; j < fields.size(); ++j) {
        if (fields[j] != "e" + std::to_string(j - 1)) fail("unexpected header column '" + std::string(fields[j]) + "'");
      }
      columns = fields.size();
      continue;
    }
    if (fields.size() != columns) {
      fail("expected " + std::to_string(columns) + " columns, got " + std::to_string(fields.size()));
    }
    std::size_t node = 0;
    auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), node);
    if (ec != std::errc() || p != fields[0].data() + fields[0].size()) fail("invalid node id");
    if (node != rows) fail("node ids must be consecutive from 0");
    for (std::size_t j = 1; j < columns; ++j) {
      double x = 0.0;
      auto [q, ec2] = std::from_chars(fields[j].data(), fields[j].data() + fields[j].size(), x);
      if (ec2 != std::errc() || q != fields[j].data() + fields[j].size()) fail("invalid number");
      values.push_back(x);
    }
    ++rows;
  }
  if (columns == 0) throw ParseError("missing header row");
  EmbeddingMatrix e(rows, columns - 1);
  std::copy(values.begin(), values.end(), e.data().begin());
  return e;
}

void save_training_log(std::span<const double> epoch_mean_loss, const std::filesystem::path& path,
                       std::span<const std::string> header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  out << "epoch,mean_loss\n";
  for (std::size_t i = 0; i < epoch_mean_loss.size(); ++i) out << i << ',' << format_double(epoch_mean_loss[i]) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

}  // namespace qcw
