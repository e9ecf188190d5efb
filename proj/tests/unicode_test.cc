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

#include "subchar/unicode.h"

#include <gtest/gtest.h>

namespace subchar {
namespace {

TEST(UnicodeTest, Utf8RoundTrip) {
  const std::string s = "a魑é\U0002A700x";
  const std::u32string u = Utf8ToUtf32(s);
  ASSERT_EQ(u.size(), 5u);
  EXPECT_EQ(u[1], U'魑');
  EXPECT_EQ(u[3], 0x2A700u);
  EXPECT_EQ(Utf32ToUtf8(u), s);
}

TEST(UnicodeTest, InvalidBytesBecomeReplacementChars) {
  const std::u32string u = Utf8ToUtf32("a\xff\xfe" "b");
  EXPECT_EQ(u, (std::u32string{U'a', kReplacementChar, kReplacementChar, U'b'}));
  // Truncated three-byte sequence.
  EXPECT_EQ(Utf8ToUtf32("\xe9\xad"), (std::u32string{kReplacementChar, kReplacementChar}));
}

TEST(UnicodeTest, CjkRanges) {
  EXPECT_TRUE(IsCjk(U'中'));
  EXPECT_TRUE(IsCjk(0x3400));
  EXPECT_TRUE(IsCjk(0x20000));
  EXPECT_TRUE(IsCjk(0xF900));
  EXPECT_FALSE(IsCjk(U'a'));
  EXPECT_FALSE(IsCjk(U'，'));
  EXPECT_FALSE(IsCjk(U'ㄅ'));
  EXPECT_TRUE(IsZhuyin(U'ㄅ'));
  EXPECT_FALSE(IsZhuyin(U'b'));
}

TEST(UnicodeTest, NfcComposesAndMapsCompatibilityIdeographs) {
  EXPECT_EQ(NormalizeNfc("e\u0301"), "\u00e9");
  EXPECT_EQ(NormalizeNfc("\uF900"), "\u8C48");
  EXPECT_EQ(NormalizeNfc("plain ascii"), "plain ascii");
  EXPECT_EQ(NormalizeNfc(""), "");
}

TEST(UnicodeTest, FnvIsStable) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(ToHex64(Fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(ToHex64(0x1), "0000000000000001");
}

}  // namespace
}  // namespace subchar
