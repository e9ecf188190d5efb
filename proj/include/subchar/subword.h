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

#ifndef SUBCHAR_SUBWORD_H_
#define SUBCHAR_SUBWORD_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace subchar {

class EncodingTable;

enum class Algorithm {
  kUnigram,
  kBpe,
  // One piece per symbol; the character-level baseline.
  kChar,
};

std::string_view AlgorithmName(Algorithm a);
Algorithm ParseAlgorithm(std::string_view name);

struct TrainerConfig {
  Algorithm algorithm = Algorithm::kUnigram;
  // Total vocabulary including the special tokens. For kChar this is an
  // upper bound: the vocabulary is the symbol inventory, capped.
  size_t vocab_size = 22675;
  size_t max_piece_length = 24;
  // Unigram seed vocabulary size, single symbols included.
  size_t seed_size = 1000000;
  double prune_fraction = 0.25;
  int em_iterations = 2;
  size_t bpe_min_pair_freq = 2;
  int threads = 1;
  // Always single-symbol pieces, whether or not they occur in the corpus.
  std::vector<char32_t> required_symbols;
  // Multi-symbol strings that may never become pieces.
  std::unordered_set<std::u32string> excluded_pieces;
  bool verbose = false;
};

// A piece occurrence in a symbol stream: symbols [begin, begin + length).
struct Span {
  uint32_t begin = 0;
  uint32_t length = 0;
  int32_t id = 0;

  bool operator==(const Span&) const = default;
};

class SubwordModel {
 public:
  static constexpr int32_t kPadId = 0;
  static constexpr int32_t kUnkId = 1;
  static constexpr int32_t kClsId = 2;
  static constexpr int32_t kSepId = 3;
  static constexpr int32_t kMaskId = 4;
  static constexpr int32_t kNumSpecials = 5;
  static const std::array<std::string, kNumSpecials>& SpecialTokens();

  // Pieces must be distinct, non-empty and exclude the specials; ids are
  // assigned in order after the specials. `merges` (BPE only) are pairs of
  // piece strings in rank order.
  static SubwordModel FromPieces(
      Algorithm algorithm,
      std::vector<std::pair<std::u32string, double>> pieces,
      std::vector<std::pair<std::u32string, std::u32string>> merges = {});

  Algorithm algorithm() const { return algorithm_; }
  // Including specials.
  size_t size() const { return pieces_.size(); }
  static bool IsSpecial(int32_t id) { return id >= 0 && id < kNumSpecials; }

  // Specials as UTF-32 of their token text.
  const std::u32string& piece(int32_t id) const { return pieces_.at(id); }
  double score(int32_t id) const { return scores_.at(id); }
  std::optional<int32_t> PieceToId(std::u32string_view piece) const;
  // Score of the unknown edge in the segmentation lattice.
  double unk_score() const { return unk_score_; }
  const std::vector<std::pair<std::u32string, std::u32string>>& merges() const {
    return merges_;
  }
  size_t max_piece_length() const { return max_len_; }

  // Lossless: spans tile [0, symbols.size()). Symbols without a piece
  // become length-1 UNK spans.
  std::vector<Span> Segment(std::u32string_view symbols) const;
  // Unigram: score of the best segmentation (Viterbi), accumulated left to
  // right. Other algorithms: sum of span scores of Segment().
  double SegmentScore(std::u32string_view symbols) const;

  // Vocab file. `header` lines are stored as "%%key value".
  void Save(std::ostream& out,
            const std::vector<std::pair<std::string, std::string>>& header = {}) const;
  static SubwordModel Load(std::istream& in, const std::string& source = "<vocab>",
                           std::map<std::string, std::string>* header = nullptr);

 private:
  SubwordModel() = default;
  void BuildIndex();
  std::vector<Span> SegmentUnigram(std::u32string_view s, double* score) const;
  std::vector<Span> SegmentBpe(std::u32string_view s) const;
  std::vector<Span> SegmentChar(std::u32string_view s) const;
  int32_t Child(int32_t node, char32_t c) const;

  Algorithm algorithm_ = Algorithm::kUnigram;
  std::vector<std::u32string> pieces_;
  std::vector<double> scores_;
  std::vector<std::pair<std::u32string, std::u32string>> merges_;
  double unk_score_ = -10.0;
  size_t max_len_ = 1;

  std::unordered_map<std::u32string, int32_t> piece_to_id_;
  std::unordered_map<char32_t, int32_t> single_;
  // Trie over piece strings: (node << 21 | symbol) -> child node.
  std::unordered_map<uint64_t, int32_t> trie_;
  std::vector<int32_t> node_piece_;
  // BPE: (left id, right id) -> (rank, merged id).
  std::unordered_map<uint64_t, std::pair<int32_t, int32_t>> merge_rank_;
};

// Trains on symbol streams, one per line.
SubwordModel Train(const std::vector<std::u32string>& lines, const TrainerConfig& config);

enum class PieceCategory {
  kSpecial,
  // Only non-CJK passthrough characters.
  kPassthrough,
  // Exactly one complete character encoding.
  kChar,
  // Part of a character encoding, with no complete encoding.
  kSubChar,
  // Several complete encodings, or one plus other material.
  kCombination,
};

std::string_view PieceCategoryName(PieceCategory c);
PieceCategory Categorize(const std::u32string& piece, const EncodingTable& table);
PieceCategory Categorize(const SubwordModel& model, int32_t id, const EncodingTable& table);

// Escaping used in vocab files and CLI piece output.
std::string EscapePiece(std::u32string_view piece, bool escape_space = false);
std::u32string UnescapePiece(std::string_view text);

}  // namespace subchar

#endif  // SUBCHAR_SUBWORD_H_
