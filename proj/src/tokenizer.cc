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

#include "subchar/tokenizer.h"

#include <algorithm>
#include <thread>

#include "subchar/errors.h"
#include "subchar/unicode.h"

namespace subchar {

Tokenizer::Tokenizer(EncodingTable table, SubwordModel model,
                     std::optional<WordLexicon> lexicon,
                     std::shared_ptr<const Segmenter> segmenter)
    : table_(std::move(table)),
      model_(std::move(model)),
      lexicon_(std::move(lexicon)),
      segmenter_(std::move(segmenter)) {
  if (lexicon_ && !segmenter_) {
    throw ConfigError("a word lexicon needs a segmenter");
  }
  if (lexicon_) {
    word_tokens_.reserve(lexicon_->size());
    for (const auto& [w, f] : lexicon_->entries()) {
      word_tokens_.push_back(Utf32ToUtf8(EncodeLine(table_, w)));
    }
  }
}

size_t Tokenizer::vocab_size() const {
  return model_.size() + (lexicon_ ? lexicon_->size() : 0);
}

bool Tokenizer::IsWordId(int32_t id) const {
  return id >= static_cast<int32_t>(model_.size()) &&
         id < static_cast<int32_t>(vocab_size());
}

std::string Tokenizer::IdToToken(int32_t id) const {
  if (id < 0 || static_cast<size_t>(id) >= vocab_size()) {
    throw InvalidIdError(id, vocab_size());
  }
  if (IsWordId(id)) return word_tokens_[id - model_.size()];
  return Utf32ToUtf8(model_.piece(id));
}

PieceCategory Tokenizer::CategoryOf(int32_t id) const {
  if (id < 0 || static_cast<size_t>(id) >= vocab_size()) {
    throw InvalidIdError(id, vocab_size());
  }
  if (IsWordId(id)) return PieceCategory::kCombination;
  return Categorize(model_, id, table_);
}

std::vector<Tokenizer::Run> Tokenizer::Route(std::u32string_view text) const {
  std::vector<Run> runs;
  auto add_plain = [&](size_t b, size_t e) {
    // Newlines are hard boundaries and tokens of their own.
    size_t start = b;
    for (size_t i = b; i < e; ++i) {
      if (text[i] != U'\n') continue;
      if (i > start) runs.push_back({start, i, -1});
      runs.push_back({i, i + 1, -1});
      start = i + 1;
    }
    if (e > start) runs.push_back({start, e, -1});
  };
  if (!lexicon_) {
    add_plain(0, text.size());
    return runs;
  }
  size_t pending = 0;
  for (const WordSpan& sp : segmenter_->Segment(text)) {
    const int64_t idx = sp.size() >= 2 ? lexicon_->IndexOf(text.substr(sp.begin, sp.size())) : -1;
    if (idx < 0) continue;
    add_plain(pending, sp.begin);
    runs.push_back({sp.begin, sp.end, static_cast<int32_t>(model_.size() + idx)});
    pending = sp.end;
  }
  add_plain(pending, text.size());
  return runs;
}

void Tokenizer::AppendRun(std::u32string_view text, const Run& run, TokenizedOutput* out,
                          bool with_strings) const {
  if (run.word_id >= 0) {
    out->ids.push_back(run.word_id);
    out->offsets.emplace_back(run.begin, run.end);
    if (with_strings) out->tokens.push_back(word_tokens_[run.word_id - model_.size()]);
    return;
  }
  const EncodedText enc = EncodeText(table_, text.substr(run.begin, run.end - run.begin));
  for (const Span& sp : model_.Segment(enc.symbols)) {
    out->ids.push_back(sp.id);
    const uint32_t first = enc.source[sp.begin];
    const uint32_t last = enc.source[sp.begin + sp.length - 1];
    out->offsets.emplace_back(run.begin + first, run.begin + last + 1);
    if (with_strings) {
      out->tokens.push_back(sp.id == SubwordModel::kUnkId
                                ? SubwordModel::SpecialTokens()[SubwordModel::kUnkId]
                                : Utf32ToUtf8(model_.piece(sp.id)));
    }
  }
}

TokenizedOutput Tokenizer::Tokenize(std::string_view text,
                                    std::optional<size_t> max_len) const {
  const std::u32string u = Utf8ToUtf32(NormalizeNfc(text));
  TokenizedOutput out;
  for (const Run& run : Route(u)) AppendRun(u, run, &out, true);

  size_t n_chars = u.size();
  if (max_len && out.ids.size() > *max_len) {
    size_t keep = *max_len;
    while (keep > 0 && out.offsets[keep].first < out.offsets[keep - 1].second) --keep;
    out.ids.resize(keep);
    out.tokens.resize(keep);
    out.offsets.resize(keep);
    n_chars = keep ? out.offsets.back().second : 0;
  }
  out.char_to_tokens.assign(n_chars, {});
  for (uint32_t t = 0; t < out.offsets.size(); ++t) {
    for (uint32_t c = out.offsets[t].first; c < out.offsets[t].second; ++c) {
      out.char_to_tokens[c].push_back(t);
    }
  }
  return out;
}

std::vector<int32_t> Tokenizer::Encode(std::string_view text) const {
  const std::u32string u = Utf8ToUtf32(NormalizeNfc(text));
  TokenizedOutput out;
  for (const Run& run : Route(u)) AppendRun(u, run, &out, false);
  return std::move(out.ids);
}

std::vector<TokenizedOutput> Tokenizer::TokenizeBatch(const std::vector<std::string>& texts,
                                                      int threads,
                                                      std::optional<size_t> max_len) const {
  std::vector<TokenizedOutput> out(texts.size());
  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(std::max(threads, 1), texts.size()));
  auto work = [&](size_t w) {
    for (size_t i = w; i < texts.size(); i += workers) out[i] = Tokenize(texts[i], max_len);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::string Tokenizer::Decode(const std::vector<int32_t>& ids) const {
  std::string out;
  std::u32string stream;
  for (int32_t id : ids) {
    if (id < 0 || static_cast<size_t>(id) >= vocab_size()) {
      throw InvalidIdError(id, vocab_size());
    }
    if (SubwordModel::IsSpecial(id)) continue;
    if (IsWordId(id)) {
      out += DecodeStream(table_, stream);
      stream.clear();
      out += Utf32ToUtf8(lexicon_->word(id - model_.size()));
      continue;
    }
    stream += model_.piece(id);
  }
  out += DecodeStream(table_, stream);
  return out;
}

}  // namespace subchar
