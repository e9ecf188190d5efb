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

#include <gtest/gtest.h>

#include <algorithm>

#include "subchar/bundle.h"
#include "subchar/errors.h"
#include "subchar/unicode.h"
#include "test_util.h"

namespace subchar {
namespace {

EncodingTable Wubi() { return testing::ToyWubi(); }

std::u32string Esc(char32_t c) { return std::u32string{kEscape, c}; }

// Toy wubi model over the four-character idiom.
Tokenizer IdiomTokenizer() {
  std::vector<std::pair<std::u32string, double>> pieces = {
      {U"rqcc#rqci#rqcn#rqcw#", -1.0}, {U"rqcc#", -3.0}, {U"rqci#", -3.0},
      {U"rqcn#", -3.0}, {U"rqcw#", -3.0}, {U"rqc", -4.0}, {Esc(U'x'), -4.0}};
  for (char32_t c : std::u32string(U"rqcinw#")) pieces.push_back({std::u32string(1, c), -8.0});
  pieces.push_back({std::u32string(1, kEscape), -8.0});
  pieces.push_back({U"x", -8.0});
  return Tokenizer(Wubi(), SubwordModel::FromPieces(Algorithm::kUnigram, std::move(pieces)));
}

void ExpectTiling(const TokenizedOutput& out, size_t n) {
  if (n == 0) {
    EXPECT_TRUE(out.offsets.empty());
    return;
  }
  ASSERT_FALSE(out.offsets.empty());
  EXPECT_EQ(out.offsets.front().first, 0u);
  EXPECT_EQ(out.offsets.back().second, n);
  for (size_t k = 0; k < out.offsets.size(); ++k) {
    EXPECT_LT(out.offsets[k].first, out.offsets[k].second);
    if (k == 0) continue;
    EXPECT_GE(out.offsets[k].first, out.offsets[k - 1].first);
    EXPECT_GE(out.offsets[k].second, out.offsets[k - 1].second);
    EXPECT_LE(out.offsets[k].first, out.offsets[k - 1].second);
  }
  ASSERT_EQ(out.char_to_tokens.size(), n);
  for (size_t c = 0; c < n; ++c) EXPECT_FALSE(out.char_to_tokens[c].empty()) << c;
}

TEST(TokenizerTest, IdiomIsOneCombinationToken) {
  const Tokenizer tok = IdiomTokenizer();
  const auto out = tok.Tokenize("魑魅魍魉");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.tokens[0], "rqcc#rqci#rqcn#rqcw#");
  EXPECT_EQ(tok.CategoryOf(out.ids[0]), PieceCategory::kCombination);
  EXPECT_EQ(out.offsets[0], std::make_pair(0u, 4u));
  EXPECT_EQ(out.char_to_tokens, (std::vector<std::vector<uint32_t>>{{0}, {0}, {0}, {0}}));
  EXPECT_EQ(tok.Decode(out.ids), "魑魅魍魉");
}

TEST(TokenizerTest, EmptyInput) {
  const Tokenizer tok = IdiomTokenizer();
  const auto out = tok.Tokenize("");
  EXPECT_EQ(out.size(), 0u);
  EXPECT_TRUE(out.char_to_tokens.empty());
  EXPECT_EQ(tok.Decode({}), "");
}

TEST(TokenizerTest, PassthroughBetweenCharacters) {
  const Tokenizer tok = IdiomTokenizer();
  const auto out = tok.Tokenize("魑x魅");
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out.tokens[1], Utf32ToUtf8(Esc(U'x')));
  EXPECT_EQ(tok.CategoryOf(out.ids[1]), PieceCategory::kPassthrough);
  EXPECT_EQ(out.offsets, (std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {1, 2}, {2, 3}}));
  ExpectTiling(out, 3);
  EXPECT_EQ(tok.Decode(out.ids), "魑x魅");
}

TEST(TokenizerTest, SubCharPiecesShareOffsets) {
  std::vector<std::pair<std::u32string, double>> pieces = {{U"rqc", -1.0}, {U"rqci#", -1.0}};
  for (char32_t c : std::u32string(U"rqci#")) pieces.push_back({std::u32string(1, c), -2.0});
  const Tokenizer tok(Wubi(), SubwordModel::FromPieces(Algorithm::kUnigram, pieces));
  const auto out = tok.Tokenize("魑魅");
  EXPECT_EQ(out.tokens, (std::vector<std::string>{"rqc", "c", "#", "rqci#"}));
  EXPECT_EQ(out.offsets,
            (std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {0, 1}, {0, 1}, {1, 2}}));
  EXPECT_EQ(out.char_to_tokens, (std::vector<std::vector<uint32_t>>{{0, 1, 2}, {3}}));
  EXPECT_EQ(tok.CategoryOf(out.ids[0]), PieceCategory::kSubChar);
  ExpectTiling(out, 2);
  // Truncation keeps whole characters only.
  EXPECT_EQ(tok.Tokenize("魑魅", 2).size(), 0u);
  EXPECT_EQ(tok.Tokenize("魑魅", 3).size(), 3u);
}

TEST(TokenizerTest, DecodeErrorsAndFragments) {
  const Tokenizer tok = IdiomTokenizer();
  EXPECT_THROW(tok.Decode({static_cast<int32_t>(tok.vocab_size())}), InvalidIdError);
  EXPECT_THROW(tok.Decode({-1}), InvalidIdError);
  const int32_t rqc = *tok.model().PieceToId(U"rqc");
  const int32_t rqcc = *tok.model().PieceToId(U"rqcc#");
  EXPECT_EQ(tok.Decode({rqcc, rqc}), "魑⟨frag:rqc⟩");
  EXPECT_EQ(tok.Decode({SubwordModel::kClsId, rqcc, SubwordModel::kSepId}), "魑");
  EXPECT_THROW(tok.IdToToken(-3), InvalidIdError);
}

TEST(TokenizerTest, TruncationStopsAtCharacterBoundary) {
  const Tokenizer tok = IdiomTokenizer();
  const auto full = tok.Tokenize("x魑x魅");
  ASSERT_EQ(full.size(), 4u);
  const auto cut = tok.Tokenize("x魑x魅", 2);
  EXPECT_EQ(cut.size(), 2u);
  EXPECT_EQ(cut.char_to_tokens.size(), 2u);
  EXPECT_EQ(tok.Tokenize("x魑x魅", 0).size(), 0u);
  EXPECT_EQ(tok.Tokenize("x魑x魅", 10).size(), 4u);
}

TEST(TokenizerTest, TruncationNeverSplitsACharacter) {
  const Tokenizer& tok = testing::SmallTokenizer("pinyin");
  for (const auto& line : testing::DeskEvalSample()) {
    const auto full = tok.Tokenize(line);
    for (size_t max : {1u, 3u, 7u, 20u}) {
      const auto cut = tok.Tokenize(line, max);
      ASSERT_LE(cut.size(), max);
      ASSERT_LE(cut.size(), full.size());
      for (size_t k = 0; k < cut.size(); ++k) EXPECT_EQ(cut.ids[k], full.ids[k]);
      if (cut.size() < full.size()) {
        // The next token starts a fresh character.
        EXPECT_GE(full.offsets[cut.size()].first, cut.size() ? cut.offsets.back().second : 0u);
      }
    }
  }
}

TEST(TokenizerTest, NfcBeforeEncoding) {
  const Tokenizer& tok = testing::SmallTokenizer("pinyin");
  // U+F900 is a compatibility ideograph for U+8C48.
  EXPECT_EQ(tok.Encode("\uF900"), tok.Encode("\u8C48"));
  EXPECT_EQ(tok.Decode(tok.Encode("\uF900")), "\u8C48");
  EXPECT_EQ(tok.Tokenize("\uF900").char_to_tokens.size(), 1u);
}

TEST(TokenizerTest, NewlineIsItsOwnToken) {
  const Tokenizer& tok = testing::SmallTokenizer("pinyin");
  const auto out = tok.Tokenize("中国\n人民");
  size_t newline_tokens = 0;
  for (size_t k = 0; k < out.size(); ++k) {
    if (out.offsets[k].first <= 2 && out.offsets[k].second > 2) {
      EXPECT_EQ(out.offsets[k], std::make_pair(2u, 3u));
      EXPECT_EQ(out.tokens[k], "\n");
      ++newline_tokens;
    }
  }
  EXPECT_EQ(newline_tokens, 1u);
}

TEST(TokenizerTest, RoundTripOnDeskSample) {
  for (const char* scheme : {"pinyin", "zhuyin", "wubi", "stroke", "byte", "random_index", "raw"}) {
    const Tokenizer& tok = testing::SmallTokenizer(scheme);
    for (const auto& line : testing::DeskEvalSample()) {
      const auto out = tok.Tokenize(line);
      ExpectTiling(out, Utf8ToUtf32(NormalizeNfc(line)).size());
      if (std::count(out.ids.begin(), out.ids.end(), SubwordModel::kUnkId)) continue;
      EXPECT_EQ(tok.Decode(out.ids), NormalizeNfc(line)) << scheme;
    }
  }
}

TEST(TokenizerTest, NoIndexIdsIgnoreHomophones) {
  const Tokenizer& tok = testing::SmallTokenizer("pinyin-no-index");
  EXPECT_EQ(tok.Encode("意义"), tok.Encode("异议"));
  EXPECT_THROW(tok.Decode(tok.Encode("意")), AmbiguityError);
}

TEST(TokenizerTest, BatchMatchesSerialForAnyThreadCount) {
  const Tokenizer& tok = testing::SmallTokenizer("pinyin");
  const auto& lines = testing::DeskEvalSample();
  const auto one = tok.TokenizeBatch(lines, 1);
  const auto four = tok.TokenizeBatch(lines, 4);
  ASSERT_EQ(one.size(), lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    EXPECT_EQ(one[i].ids, four[i].ids);
    EXPECT_EQ(one[i].offsets, four[i].offsets);
    EXPECT_EQ(one[i].ids, tok.Encode(lines[i]));
  }
}

TEST(TokenizerTest, BpeModelRoundTrips) {
  const Tokenizer& tok = testing::SmallTokenizer("wubi", Algorithm::kBpe);
  for (const auto& line : testing::DeskEvalSample()) {
    const auto ids = tok.Encode(line);
    if (std::count(ids.begin(), ids.end(), SubwordModel::kUnkId)) continue;
    EXPECT_EQ(tok.Decode(ids), NormalizeNfc(line));
  }
}

}  // namespace
}  // namespace subchar
