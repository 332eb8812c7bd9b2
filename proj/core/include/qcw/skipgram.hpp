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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcw/corpus.hpp"

namespace qcw {

struct SkipGramParams {
  std::size_t dimension = 32;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 0;
  /// Sequential updates; output is a pure function of (corpus, params).
  bool deterministic = true;
  /// Worker count for the lock-free mode, ignored when deterministic.
  std::size_t threads = 1;

  void validate() const;
};

/// Row-major matrix of per-node vectors.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t dimension) : rows_(rows), dim_(dimension), data_(rows * dimension) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dimension() const noexcept { return dim_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

using NodePair = std::pair<NodeId, NodeId>;

/// (center, context) pairs for every position i and every j != i with
/// |i - j| <= window, truncated at walk boundaries. Ordered by walk, then
/// center position, then context position.
std::vector<NodePair> build_pairs(const WalkCorpus& corpus, std::size_t window);

struct SgnsGradient {
  double loss = 0.0;
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

/// loss = -log sigma(u . u') - sum_n log sigma(-u . u'_n), with analytic
/// gradients with respect to u, u' and every u'_n.
SgnsGradient sgns_loss_and_grad(std::span<const double> center, std::span<const double> context,
                                std::span<const std::span<const double>> negatives);

struct TrainedEmbeddings {
  EmbeddingMatrix input;   // emitted embeddings
  EmbeddingMatrix output;  // context vectors
  std::vector<double> epoch_mean_loss;
};

/// Skip-gram with negative sampling by SGD over shuffled pairs. Negatives
/// are drawn from unigram^0.75 token frequencies; the learning rate decays
/// linearly from learning_rate to 1e-4 * learning_rate. node_count = 0 uses
/// corpus.vocabulary_bound(). Throws NonFiniteLoss if training diverges.
TrainedEmbeddings train(const WalkCorpus& corpus, const SkipGramParams& params, std::size_t node_count = 0);

/// CSV with header node,e0,...,e{d-1}; values printed with 17 significant
/// digits so a round trip is exact.
void save_embeddings(const EmbeddingMatrix& e, const std::filesystem::path& path,
                     std::span<const std::string> header_lines = {});
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

/// CSV with header epoch,mean_loss.
void save_training_log(std::span<const double> epoch_mean_loss, const std::filesystem::path& path,
                       std::span<const std::string> header_lines = {});

double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace qcw
