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

#ifndef SUBCHAR_TOKENIZER_H_
#define SUBCHAR_TOKENIZER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subchar/charmap.h"
#include "subchar/cws.h"
#include "subchar/subword.h"

namespace subchar {

struct TokenizedOutput {
  std::vector<std::string> tokens;
  std::vector<int32_t> ids;
  // Half-open character spans into the NFC-normalized input.
  std::vector<std::pair<uint32_t, uint32_t>> offsets;
  // For each character position, the indices of tokens covering it.
  std::vector<std::vector<uint32_t>> char_to_tokens;

  size_t size() const { return ids.size(); }
};

// Immutable tokenizer runtime: NFC, optional word routing, per-character
// encoding, subword segmentation.
class Tokenizer {
 public:
  Tokenizer(EncodingTable table, SubwordModel model,
            std::optional<WordLexicon> lexicon = std::nullopt,
            std::shared_ptr<const Segmenter> segmenter = nullptr);

  const EncodingTable& table() const { return table_; }
  const SubwordModel& model() const { return model_; }
  const WordLexicon* lexicon() const { return lexicon_ ? &*lexicon_ : nullptr; }
  const Segmenter* segmenter() const { return segmenter_.get(); }

  // Subword pieces, specials and lexicon words.
  size_t vocab_size() const;
  bool IsWordId(int32_t id) const;
  // Token text: the piece, or a word's encoded concatenation.
  std::string IdToToken(int32_t id) const;
  PieceCategory CategoryOf(int32_t id) const;

  // `max_len` truncates at the last complete-character boundary that keeps
  // at most max_len tokens.
  TokenizedOutput Tokenize(std::string_view text,
                           std::optional<size_t> max_len = std::nullopt) const;
  std::vector<TokenizedOutput> TokenizeBatch(const std::vector<std::string>& texts,
                                             int threads = 1,
                                             std::optional<size_t> max_len = std::nullopt) const;
  // Token ids only; no offsets or token strings.
  std::vector<int32_t> Encode(std::string_view text) const;

  // Specials are dropped. Throws InvalidIdError and, for NoIndex forms
  // shared by several characters, AmbiguityError.
  std::string Decode(const std::vector<int32_t>& ids) const;

 private:
  struct Run {
    size_t begin, end;
    int32_t word_id;  // -1 for subword runs
  };
  std::vector<Run> Route(std::u32string_view text) const;
  void AppendRun(std::u32string_view text, const Run& run, TokenizedOutput* out,
                 bool with_strings) const;

  EncodingTable table_;
  SubwordModel model_;
  std::optional<WordLexicon> lexicon_;
  std::shared_ptr<const Segmenter> segmenter_;
  std::vector<std::string> word_tokens_;
};

}  // namespace subchar

#endif  // SUBCHAR_TOKENIZER_H_
