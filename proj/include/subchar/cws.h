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

#ifndef SUBCHAR_CWS_H_
#define SUBCHAR_CWS_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace subchar {

// Half-open span [begin, end) in codepoints.
struct WordSpan {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool operator==(const WordSpan&) const = default;
};

// Word segmentation plug-in point. Implementations must tile the input.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual std::vector<WordSpan> Segment(std::u32string_view text) const = 0;
  virtual std::string Name() const = 0;
};

// Greedy longest dictionary match from the left, one character otherwise.
class ForwardMaxMatchSegmenter : public Segmenter {
 public:
  explicit ForwardMaxMatchSegmenter(const std::vector<std::u32string>& words);
  // `<word>[<TAB><frequency>]` per line; '%' comments.
  static ForwardMaxMatchSegmenter FromFile(const std::filesystem::path& path);

  std::vector<WordSpan> Segment(std::u32string_view text) const override;
  std::string Name() const override { return "fmm"; }

  size_t size() const { return words_.size(); }
  size_t max_word_len() const { return max_len_; }
  const std::vector<std::u32string>& words() const { return ordered_; }

 private:
  std::vector<std::u32string> ordered_;
  std::unordered_set<std::u32string> words_;
  size_t max_len_ = 1;
};

// High-frequency words emitted as single tokens in the CWS pipeline.
class WordLexicon {
 public:
  WordLexicon() = default;
  // Words in admission order, with corpus frequencies.
  explicit WordLexicon(std::vector<std::pair<std::u32string, uint64_t>> words);

  size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  size_t max_word_len() const { return max_len_; }
  // Admission rank, or -1.
  int64_t IndexOf(std::u32string_view word) const;
  bool Contains(std::u32string_view word) const { return IndexOf(word) >= 0; }
  const std::u32string& word(size_t i) const { return words_.at(i).first; }
  uint64_t frequency(size_t i) const { return words_.at(i).second; }
  const std::vector<std::pair<std::u32string, uint64_t>>& entries() const { return words_; }

  // `<word>\t<frequency>` per line in admission order.
  void Save(const std::filesystem::path& path) const;
  static WordLexicon Load(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::u32string, uint64_t>> words_;
  std::unordered_map<std::u32string, int64_t> index_;
  size_t max_len_ = 0;
};

// round-half-up(word_ratio * vocab_size).
size_t LexiconBudget(size_t vocab_size, double word_ratio);

// Segments every line, counts words of two or more characters and admits
// the most frequent, ties broken by codepoint order.
WordLexicon BuildLexicon(const std::vector<std::u32string>& lines, const Segmenter& segmenter,
                         size_t vocab_size, double word_ratio);

}  // namespace subchar

#endif  // SUBCHAR_CWS_H_
