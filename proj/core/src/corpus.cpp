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
#include "qcw/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qcw/errors.hpp"

namespace qcw {

std::size_t WalkCorpus::token_count() const noexcept {
  std::size_t n = 0;
  for (const auto& w : walks) n += w.size();
  return n;
}

std::size_t WalkCorpus::vocabulary_bound() const noexcept {
  std::size_t bound = 0;
  for (const auto& w : walks) {
    for (NodeId v : w) bound = std::max<std::size_t>(bound, std::size_t{v} + 1);
  }
  return bound;
}

std::string format_corpus(const WalkCorpus& corpus) {
  std::string out;
  for (const auto& walk : corpus.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(walk[i]);
    }
    out += '\n';
  }
  return out;
}

void save_corpus(const WalkCorpus& corpus, const std::filesystem::path& path,
                 std::span<const std::string> header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  out << format_corpus(corpus);
  if (!out) throw IoError("failed writing " + path.string());
}

WalkCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  WalkCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with('#')) continue;
    Walk walk;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      NodeId v{};
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next != end && *next != ' ')) {
        throw ParseError("line " + std::to_string(line_no) + ": invalid node id");
      }
      walk.push_back(v);
      p = next;
    }
    if (!walk.empty()) corpus.walks.push_back(std::move(walk));
  }
  return corpus;
}

}  // namespace qcw
