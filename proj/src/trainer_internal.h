// Copyright 2026 The SubChar Tokenizer Authors
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

#ifndef SUBCHAR_SRC_TRAINER_INTERNAL_H_
#define SUBCHAR_SRC_TRAINER_INTERNAL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subchar/subword.h"

namespace subchar::internal {

struct WeightedLine {
  std::u32string text;
  uint64_t weight = 0;
};

// Distinct non-empty lines with multiplicities, in lexicographic order.
std::vector<WeightedLine> DedupeLines(const std::vector<std::u32string>& lines);

// Corpus symbols and required symbols, in codepoint order, with counts.
std::vector<std::pair<char32_t, uint64_t>> SymbolInventory(
    const std::vector<WeightedLine>& corpus, const std::vector<char32_t>& required);

size_t PieceBudget(const TrainerConfig& config);

// Prefix trie over piece strings.
class PieceTrie {
 public:
  explicit PieceTrie(const std::vector<std::u32string>& pieces);

  // fn(length, piece index) for every piece that starts at s[i].
  template <typename Fn>
  void ForEachPrefix(std::u32string_view s, size_t i, Fn&& fn) const {
    int32_t node = 0;
    for (size_t j = i; j < s.size(); ++j) {
      const auto it = next_.find((static_cast<uint64_t>(node) << 21) | s[j]);
      if (it == next_.end()) return;
      node = it->second;
      if (piece_[node] >= 0) fn(j + 1 - i, piece_[node]);
    }
  }

 private:
  std::unordered_map<uint64_t, int32_t> next_;
  std::vector<int32_t> piece_;
};

SubwordModel TrainUnigram(const std::vector<std::u32string>& lines,
                          const TrainerConfig& config);
SubwordModel TrainBpe(const std::vector<std::u32string>& lines,
                      const TrainerConfig& config);
SubwordModel TrainChar(const std::vector<std::u32string>& lines,
                       const TrainerConfig& config);

}  // namespace subchar::internal

#endif  // SUBCHAR_SRC_TRAINER_INTERNAL_H_
