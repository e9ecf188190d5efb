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

#include <gtest/gtest.h>

#include <algorithm>

#include "subchar/errors.h"
#include "subchar/unicode.h"
#include "test_util.h"

namespace subchar {
namespace {

std::vector<WordSpan> Fmm(const std::vector<std::u32string>& words, std::u32string_view text) {
  return ForwardMaxMatchSegmenter(words).Segment(text);
}

TEST(ForwardMaxMatchTest, WholeTextWord) {
  EXPECT_EQ(Fmm({U"魑魅魍魉"}, U"魑魅魍魉"), (std::vector<WordSpan>{{0, 4}}));
}

TEST(ForwardMaxMatchTest, NoWordsGivesCharacters) {
  EXPECT_EQ(Fmm({U"中国"}, U"魑魅x"), (std::vector<WordSpan>{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(Fmm({U"中国"}, U"").empty());
}

TEST(ForwardMaxMatchTest, LongestMatchFromTheLeft) {
  EXPECT_EQ(Fmm({U"AB", U"ABA"}, U"ABAB"), (std::vector<WordSpan>{{0, 3}, {3, 4}}));
  EXPECT_EQ(Fmm({U"中国", U"国人", U"中国人民"}, U"中国人"),
            (std::vector<WordSpan>{{0, 2}, {2, 3}}));
}

TEST(ForwardMaxMatchTest, DictionaryFile) {
  const auto seg = ForwardMaxMatchSegmenter::FromFile(DefaultDictionary());
  EXPECT_GT(seg.size(), 1000u);
  EXPECT_GE(seg.max_word_len(), 2u);
  const std::u32string text = U"中华人民共和国成立了";
  size_t pos = 0;
  for (const WordSpan& w : seg.Segment(text)) {
    EXPECT_EQ(w.begin, pos);
    EXPECT_GT(w.size(), 0u);
    pos = w.end;
  }
  EXPECT_EQ(pos, text.size());
  EXPECT_THROW(ForwardMaxMatchSegmenter::FromFile("/nonexistent.dict"), IoError);
}

TEST(LexiconTest, Budget) {
  EXPECT_EQ(LexiconBudget(100, 0.8), 80u);
  EXPECT_EQ(LexiconBudget(22675, 0.8), 18140u);
  EXPECT_EQ(LexiconBudget(5, 0.5), 3u);
  EXPECT_THROW(LexiconBudget(100, 0.0), ConfigError);
  EXPECT_THROW(LexiconBudget(100, 1.0), ConfigError);
}

TEST(LexiconTest, FrequencyOrderAndTieBreak) {
  const ForwardMaxMatchSegmenter seg({U"乙丙", U"甲乙", U"丁戊"});
  // 甲乙 and 乙丙 tie at two; 乙丙 has the smaller first codepoint.
  const std::vector<std::u32string> lines = {U"甲乙丁戊", U"乙丙丁戊", U"甲乙乙丙丁戊"};
  const WordLexicon lex = BuildLexicon(lines, seg, 4, 0.5);
  ASSERT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.word(0), U"丁戊");
  EXPECT_EQ(lex.frequency(0), 3u);
  EXPECT_EQ(lex.word(1), U"乙丙");
  EXPECT_EQ(lex.IndexOf(U"甲乙"), -1);
  EXPECT_TRUE(lex.Contains(U"乙丙"));
}

TEST(LexiconTest, SaturatesWhenFewWords) {
  const ForwardMaxMatchSegmenter seg({U"甲乙"});
  const WordLexicon lex = BuildLexicon({U"甲乙丙", U"甲乙"}, seg, 100, 0.8);
  ASSERT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex.frequency(0), 2u);
}

TEST(LexiconTest, SaveLoad) {
  const WordLexicon lex({{U"中国", 5}, {U"人民", 3}});
  const auto path = std::filesystem::temp_directory_path() / "subchar_lexicon_test.txt";
  lex.Save(path);
  const WordLexicon back = WordLexicon::Load(path);
  EXPECT_EQ(back.entries(), lex.entries());
  EXPECT_EQ(back.max_word_len(), 2u);
  std::filesystem::remove(path);
}

TEST(CwsTokenizerTest, IdSpaceAndWordTokens) {
  const Tokenizer& tok = testing::SmallTokenizer("pinyin", Algorithm::kUnigram, true);
  ASSERT_NE(tok.lexicon(), nullptr);
  EXPECT_EQ(tok.vocab_size(), 3000u);
  EXPECT_LE(tok.lexicon()->size(), LexiconBudget(3000, 0.8));
  EXPECT_EQ(tok.model().size() + tok.lexicon()->size(), 3000u);
  const std::u32string w = tok.lexicon()->word(0);
  const auto out = tok.Tokenize(Utf32ToUtf8(w));
  ASSERT_EQ(out.ids.size(), 1u);
  EXPECT_TRUE(tok.IsWordId(out.ids[0]));
  EXPECT_EQ(tok.CategoryOf(out.ids[0]), PieceCategory::kCombination);
  EXPECT_EQ(tok.Decode(out.ids), Utf32ToUtf8(w));
  EXPECT_EQ(out.offsets[0], std::make_pair(0u, static_cast<uint32_t>(w.size())));
  for (const auto& line : testing::DeskEvalSample()) {
    const auto ids = tok.Encode(line);
    // Symbols unseen in the small training sample are UNK and drop out.
    if (std::count(ids.begin(), ids.end(), SubwordModel::kUnkId)) continue;
    EXPECT_EQ(tok.Decode(ids), NormalizeNfc(line));
  }
}

}  // namespace
}  // namespace subchar
