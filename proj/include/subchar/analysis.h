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

#ifndef SUBCHAR_ANALYSIS_H_
#define SUBCHAR_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subchar/bundle.h"
#include "subchar/subword.h"
#include "subchar/tokenizer.h"

namespace subchar {

inline constexpr std::array<PieceCategory, 5> kAllCategories = {
    PieceCategory::kSpecial, PieceCategory::kPassthrough, PieceCategory::kChar,
    PieceCategory::kSubChar, PieceCategory::kCombination};

struct VocabBreakdown {
  std::array<size_t, kAllCategories.size()> counts{};
  size_t total() const;
  size_t count(PieceCategory c) const { return counts[static_cast<size_t>(c)]; }
  double fraction(PieceCategory c) const;
};

// Categories of every id in the tokenizer's vocabulary, lexicon included.
VocabBreakdown Composition(const Tokenizer& tokenizer);

struct CorpusStats {
  std::string name;
  size_t vocab_size = 0;
  size_t examples = 0;
  size_t total_tokens = 0;
  double avg_tokens_per_example = 0.0;
  // Fixed-width 4-byte id stream.
  uint64_t tokenized_bytes = 0;
  std::optional<double> relative_size_vs_baseline;
  VocabBreakdown vocab_breakdown;
};

inline constexpr uint64_t kIdBytes = 4;

// Empty lines are not examples. Throws ConfigError on a corpus without any.
CorpusStats ComputeStats(const Tokenizer& tokenizer, const std::vector<std::string>& corpus,
                         const std::string& name = "", int threads = 1);
double AvgLength(const Tokenizer& tokenizer, const std::vector<std::string>& corpus,
                 int threads = 1);
// Id-stream bytes of a over those of b on the same corpus.
double Compression(const Tokenizer& a, const Tokenizer& b,
                   const std::vector<std::string>& corpus, int threads = 1);

struct SweepRow {
  size_t vocab_size = 0;
  double avg_length = 0.0;
};

// Trains one tokenizer per size on `train` and measures `eval`. Sizes must
// be ascending.
std::vector<SweepRow> VocabSizeSweep(const TokenizerConfig& base, const EncodingTable& table,
                                     const std::vector<std::string>& train,
                                     const std::vector<std::string>& eval,
                                     const std::vector<size_t>& sizes, int threads = 1);

std::vector<std::string> StatsCsvHeader(bool with_baseline);
std::vector<std::string> StatsCsvRow(const CorpusStats& stats, bool with_baseline);
// RFC 4180 quoting where needed.
std::string CsvLine(const std::vector<std::string>& fields);
std::string FormatFixed(double v, int digits);

}  // namespace subchar

#endif  // SUBCHAR_ANALYSIS_H_
