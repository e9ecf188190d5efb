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

#include <algorithm>
#include <cmath>
#include <map>

#include "subchar/errors.h"
#include "trainer_internal.h"

namespace subchar {
namespace internal {

std::vector<WeightedLine> DedupeLines(const std::vector<std::u32string>& lines) {
  std::map<std::u32string_view, uint64_t> counts;
  for (const auto& l : lines) {
    if (!l.empty()) ++counts[l];
  }
  std::vector<WeightedLine> out;
  out.reserve(counts.size());
  for (const auto& [text, w] : counts) out.push_back({std::u32string(text), w});
  return out;
}

std::vector<std::pair<char32_t, uint64_t>> SymbolInventory(
    const std::vector<WeightedLine>& corpus, const std::vector<char32_t>& required) {
  std::map<char32_t, uint64_t> counts;
  for (char32_t c : required) counts.emplace(c, 0);
  for (const auto& line : corpus) {
    for (char32_t c : line.text) counts[c] += line.weight;
  }
  return {counts.begin(), counts.end()};
}

size_t PieceBudget(const TrainerConfig& config) {
  if (config.vocab_size <= static_cast<size_t>(SubwordModel::kNumSpecials)) {
    throw ConfigError("vocab_size must exceed the number of special tokens (" +
                      std::to_string(SubwordModel::kNumSpecials) + ")");
  }
  if (config.max_piece_length == 0) throw ConfigError("max_piece_length must be positive");
  return config.vocab_size - SubwordModel::kNumSpecials;
}

PieceTrie::PieceTrie(const std::vector<std::u32string>& pieces) : piece_(1, -1) {
  for (size_t p = 0; p < pieces.size(); ++p) {
    int32_t node = 0;
    for (char32_t c : pieces[p]) {
      const uint64_t key = (static_cast<uint64_t>(node) << 21) | c;
      auto it = next_.find(key);
      if (it == next_.end()) {
        it = next_.emplace(key, static_cast<int32_t>(piece_.size())).first;
        piece_.push_back(-1);
      }
      node = it->second;
    }
    piece_[node] = static_cast<int32_t>(p);
  }
}

SubwordModel TrainChar(const std::vector<std::u32string>& lines,
                       const TrainerConfig& config) {
  const size_t budget = PieceBudget(config);
  const auto inventory = SymbolInventory(DedupeLines(lines), config.required_symbols);
  std::vector<std::pair<char32_t, uint64_t>> ranked = inventory;
  const std::vector<char32_t> required = [&] {
    auto r = config.required_symbols;
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }();
  if (required.size() > budget) {
    throw ConfigError("vocab_size too small for the required symbols");
  }
  auto is_required = [&](char32_t c) {
    return std::binary_search(required.begin(), required.end(), c);
  };
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    const bool ra = is_required(a.first), rb = is_required(b.first);
    if (ra != rb) return ra;
    return a.second > b.second;
  });
  if (ranked.size() > budget) ranked.resize(budget);
  uint64_t total = 0;
  for (const auto& [c, n] : ranked) total += n;
  const double log_total = std::log(static_cast<double>(std::max<uint64_t>(total, 1)));
  std::vector<std::pair<std::u32string, double>> pieces;
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (const auto& [c, n] : ranked) {
    pieces.emplace_back(std::u32string(1, c),
                        std::log(std::max(static_cast<double>(n), 0.5)) - log_total);
  }
  return SubwordModel::FromPieces(Algorithm::kChar, std::move(pieces));
}

}  // namespace internal

SubwordModel Train(const std::vector<std::u32string>& lines, const TrainerConfig& config) {
  if (config.seed_size == 0) throw ConfigError("seed_size must be positive");
  if (config.prune_fraction <= 0.0 || config.prune_fraction >= 1.0) {
    throw ConfigError("prune_fraction must be in (0, 1)");
  }
  if (config.threads < 1) throw ConfigError("threads must be at least 1");
  if (std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.empty(); })) {
    throw ConfigError("training corpus is empty");
  }
  switch (config.algorithm) {
    case Algorithm::kUnigram:
      return internal::TrainUnigram(lines, config);
    case Algorithm::kBpe:
      return internal::TrainBpe(lines, config);
    case Algorithm::kChar:
      return internal::TrainChar(lines, config);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace subchar
