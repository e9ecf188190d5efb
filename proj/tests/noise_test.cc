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

#include "subchar/noise.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "subchar/bundle.h"
#include "subchar/errors.h"
#include "subchar/unicode.h"
#include "test_util.h"

namespace subchar {
namespace {

const EncodingTable& Pinyin() {
  static const EncodingTable t = LoadSchemeTable(EncodingScheme::FromName("pinyin"));
  return t;
}

std::string CjkText(size_t n) {
  std::string out;
  size_t cjk = 0;
  for (const auto& line : testing::DeskSample()) {
    for (char32_t c : Utf8ToUtf32(line)) {
      AppendUtf8(c, &out);
      if (IsCjk(c) && ++cjk == n) return out;
    }
  }
  return out;
}

TEST(NoiseTest, SampleCountRoundsHalfUp) {
  EXPECT_EQ(SampleCount(0.375, 1000), 375u);
  EXPECT_EQ(SampleCount(0.075, 1000), 75u);
  EXPECT_EQ(SampleCount(0.5, 3), 2u);
  EXPECT_EQ(SampleCount(0.25, 2), 1u);
  EXPECT_EQ(SampleCount(0.0, 10), 0u);
  EXPECT_EQ(SampleCount(1.0, 10), 10u);
}

TEST(NoiseTest, ZeroRatioIsIdentity) {
  const std::string text = CjkText(200);
  const NoisyText out = InjectNoise(Pinyin(), {0.0, 42}, text);
  EXPECT_EQ(out.text, text);
  EXPECT_TRUE(out.report.sampled_positions.empty());
  EXPECT_TRUE(out.report.replaced.empty());
}

TEST(NoiseTest, FullRatioReplacesEveryCharacterWithAHomophone) {
  const NoisyText out = InjectNoise(Pinyin(), {1.0, 3}, "意义");
  const std::u32string u = Utf8ToUtf32(out.text);
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(out.report.replaced.size(), 2u);
  EXPECT_NE(u[0], U'意');
  EXPECT_NE(u[1], U'义');
  EXPECT_EQ(Pinyin().BaseEncoding(u[0]), Pinyin().BaseEncoding(U'意'));
  EXPECT_EQ(Pinyin().BaseEncoding(u[1]), Pinyin().BaseEncoding(U'义'));
}

TEST(NoiseTest, ThousandCharactersAtLargestRatio) {
  const std::string text = CjkText(1000);
  const NoisyText a = InjectNoise(Pinyin(), {0.375, 7}, text);
  const NoisyText b = InjectNoise(Pinyin(), {0.375, 7}, text);
  EXPECT_EQ(a.report.n_cjk, 1000u);
  EXPECT_EQ(a.report.sampled_positions.size(), 375u);
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(NoiseReportJson(a.report, 0), NoiseReportJson(b.report, 0));
  EXPECT_EQ(a.report.replaced.size() + a.report.skipped_no_homophone.size(), 375u);
  const NoisyText c = InjectNoise(Pinyin(), {0.375, 8}, text);
  EXPECT_NE(a.report.sampled_positions, c.report.sampled_positions);
}

TEST(NoiseTest, OnlyCjkPositionsChange) {
  const std::string text = "abc，意义123中国";
  const NoisyText out = InjectNoise(Pinyin(), {1.0, 1}, text);
  const std::u32string in = Utf8ToUtf32(text), got = Utf8ToUtf32(out.text);
  ASSERT_EQ(in.size(), got.size());
  for (size_t i = 0; i < in.size(); ++i) {
    if (!IsCjk(in[i])) {
      EXPECT_EQ(in[i], got[i]);
    }
  }
  for (const Replacement& r : out.report.replaced) {
    EXPECT_TRUE(IsCjk(in[r.position]));
    EXPECT_EQ(r.original, in[r.position]);
    EXPECT_EQ(r.substitute, got[r.position]);
  }
}

TEST(NoiseTest, NonPronunciationTableRejected) {
  const EncodingTable wubi = LoadSchemeTable(EncodingScheme::FromName("wubi"));
  EXPECT_THROW(InjectNoise(wubi, {0.1, 0}, "意义"), ConfigError);
  EXPECT_THROW(InjectNoise(Pinyin(), {1.5, 0}, "意义"), ConfigError);
  EXPECT_THROW(InjectNoise(Pinyin(), {-0.1, 0}, "意义"), ConfigError);
  // Zhuyin groups homophones as well.
  const EncodingTable zhuyin = LoadSchemeTable(EncodingScheme::FromName("zhuyin"));
  EXPECT_NO_THROW(InjectNoise(zhuyin, {0.5, 0}, "意义"));
}

TEST(NoiseTest, SweepNestsSamplesAcrossRatios) {
  const std::vector<std::string> lines(testing::DeskSample().begin(),
                                       testing::DeskSample().begin() + 50);
  const std::vector<double> ratios = {0.075, 0.15, 0.225, 0.30, 0.375};
  const auto sweep = NoiseSweep(Pinyin(), 99, lines, ratios);
  ASSERT_EQ(sweep.size(), 5u);
  for (size_t i = 0; i < lines.size(); ++i) {
    for (size_t r = 1; r < ratios.size(); ++r) {
      const auto& small = sweep[r - 1].reports[i].sampled_positions;
      const auto& large = sweep[r].reports[i].sampled_positions;
      EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
  }
  const auto threaded = NoiseSweep(Pinyin(), 99, lines, ratios, 4);
  for (size_t r = 0; r < ratios.size(); ++r) EXPECT_EQ(threaded[r].lines, sweep[r].lines);
  EXPECT_TRUE(NoiseSweep(Pinyin(), 99, lines, {}).empty());
}

TEST(NoiseTest, ReportJsonShape) {
  const NoisyText out = InjectNoise(Pinyin(), {1.0, 5}, "意");
  const std::string j = NoiseReportJson(out.report, 3);
  EXPECT_EQ(j.rfind("{\"line\":3,\"ratio\":1.0,\"seed\":5,\"n_cjk\":1,\"sampled\":[0]", 0), 0u)
      << j;
  EXPECT_EQ(j.find('\n'), std::string::npos);
}

}  // namespace
}  // namespace subchar
