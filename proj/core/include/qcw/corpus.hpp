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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qcw/graph.hpp"

namespace qcw {

using Walk = std::vector<NodeId>;

/// Node sequences used as sentences for embedding training.
struct WalkCorpus {
  std::vector<Walk> walks;

  std::size_t size() const noexcept { return walks.size(); }
  std::size_t token_count() const noexcept;
  /// One past the largest node id, or 0 for an empty corpus.
  std::size_t vocabulary_bound() const noexcept;

  friend bool operator==(const WalkCorpus&, const WalkCorpus&) = default;
};

/// One walk per line, node ids separated by single spaces. Header lines are
/// written first with a "# " prefix and skipped by load_corpus.
void save_corpus(const WalkCorpus& corpus, const std::filesystem::path& path,
                 std::span<const std::string> header_lines = {});
WalkCorpus load_corpus(const std::filesystem::path& path);
std::string format_corpus(const WalkCorpus& corpus);

}  // namespace qcw
