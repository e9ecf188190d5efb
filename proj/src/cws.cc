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

#include "subchar/cws.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "subchar/errors.h"
#include "subchar/unicode.h"

namespace subchar {

ForwardMaxMatchSegmenter::ForwardMaxMatchSegmenter(const std::vector<std::u32string>& words)
    : ordered_(words) {
  words_.reserve(ordered_.size());
  for (const auto& w : ordered_) {
    if (w.empty()) continue;
    words_.insert(w);
    max_len_ = std::max(max_len_, w.size());
  }
}

ForwardMaxMatchSegmenter ForwardMaxMatchSegmenter::FromFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open segmenter dictionary " + path.string());
  std::vector<std::u32string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    words.push_back(Utf8ToUtf32(line.substr(0, line.find('\t'))));
  }
  return ForwardMaxMatchSegmenter(words);
}

std::vector<WordSpan> ForwardMaxMatchSegmenter::Segment(std::u32string_view text) const {
  std::vector<WordSpan> out;
  size_t i = 0;
  while (i < text.size()) {
    size_t len = 1;
    for (size_t l = std::min(max_len_, text.size() - i); l >= 2; --l) {
      if (words_.count(std::u32string(text.substr(i, l)))) {
        len = l;
        break;
      }
    }
    out.push_back({i, i + len});
    i += len;
  }
  return out;
}

WordLexicon::WordLexicon(std::vector<std::pair<std::u32string, uint64_t>> words)
    : words_(std::move(words)) {
  for (size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i].first, static_cast<int64_t>(i)).second) {
      throw LoadError("duplicate lexicon word " + Utf32ToUtf8(words_[i].first));
    }
    max_len_ = std::max(max_len_, words_[i].first.size());
  }
}

int64_t WordLexicon::IndexOf(std::u32string_view word) const {
  const auto it = index_.find(std::u32string(word));
  return it == index_.end() ? -1 : it->second;
}

void WordLexicon::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write lexicon " + path.string());
  for (const auto& [w, f] : words_) out << Utf32ToUtf8(w) << '\t' << f << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

WordLexicon WordLexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  std::vector<std::pair<std::u32string, uint64_t>> words;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    uint64_t freq = 0;
    const char* begin = line.data() + (tab == std::string::npos ? 0 : tab + 1);
    const char* end = line.data() + line.size();
    const auto res = std::from_chars(begin, end, freq);
    if (tab == std::string::npos || tab == 0 || res.ec != std::errc() || res.ptr != end) {
      throw ParseError(path.string(), lineno, "expected <word><TAB><frequency>");
    }
    words.emplace_back(Utf8ToUtf32(line.substr(0, tab)), freq);
  }
  return WordLexicon(std::move(words));
}

size_t LexiconBudget(size_t vocab_size, double word_ratio) {
  if (!(word_ratio > 0.0 && word_ratio < 1.0)) {
    throw ConfigError("word_ratio must be in (0, 1)");
  }
  return static_cast<size_t>(std::floor(word_ratio * static_cast<double>(vocab_size) + 0.5));
}

WordLexicon BuildLexicon(const std::vector<std::u32string>& lines, const Segmenter& segmenter,
                         size_t vocab_size, double word_ratio) {
  const size_t budget = LexiconBudget(vocab_size, word_ratio);
  std::map<std::u32string, uint64_t> counts;
  for (const auto& line : lines) {
    for (const WordSpan& sp : segmenter.Segment(line)) {
      if (sp.size() >= 2) ++counts[line.substr(sp.begin, sp.size())];
    }
  }
  std::vector<std::pair<std::u32string, uint64_t>> ranked(counts.begin(), counts.end());
  // std::map order is codepoint order, so a stable sort keeps it for ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > budget) ranked.resize(budget);
  return WordLexicon(std::move(ranked));
}

}  // namespace subchar
