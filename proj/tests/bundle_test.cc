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

#include "subchar/bundle.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "subchar/errors.h"
#include "test_util.h"

namespace subchar {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("subchar_bundle_" + name);
  fs::remove_all(p);
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void SaveSmall(const fs::path& dir, const std::string& scheme, bool cws = false) {
  TokenizerConfig cfg;
  cfg.scheme = EncodingScheme::FromName(scheme);
  cfg.trainer.vocab_size = cfg.scheme.kind == SchemeKind::kRaw ? 4000 : 3000;
  cfg.cws = cws;
  SaveBundle(dir, testing::SmallTokenizer(scheme, Algorithm::kUnigram, cws), cfg,
             CorpusFingerprint(testing::DeskSample()));
}

TEST(BundleTest, DefaultPaths) {
  EXPECT_TRUE(fs::exists(DefaultMapFile(SchemeKind::kPinyin)));
  EXPECT_TRUE(fs::exists(DefaultMapFile(SchemeKind::kRandomIndex)));
  EXPECT_TRUE(fs::exists(DefaultDictionary()));
  EXPECT_THROW(LoadSchemeTable(EncodingScheme::FromName("cangjie")), IoError);
}

TEST(BundleTest, RequiredSymbols) {
  const auto req = RequiredSymbols(LoadSchemeTable(EncodingScheme::FromName("pinyin")));
  for (char32_t c : {U' ', U'~', U'\t', U'\n', U'。', U'，', U'#', kEscape}) {
    EXPECT_NE(std::find(req.begin(), req.end(), c), req.end()) << static_cast<int>(c);
  }
}

TEST(BundleTest, SaveLoadPreservesBehavior) {
  for (const char* scheme : {"pinyin", "raw", "byte"}) {
    const fs::path dir = TempDir(scheme);
    SaveSmall(dir, scheme);
    const Bundle a = LoadBundle(dir);
    const Bundle b = LoadBundle(dir);
    const Tokenizer& orig = testing::SmallTokenizer(scheme);
    EXPECT_EQ(a.manifest.scheme, scheme);
    EXPECT_EQ(a.manifest.vocab_size, orig.vocab_size());
    EXPECT_EQ(a.manifest.corpus_fingerprint, CorpusFingerprint(testing::DeskSample()));
    for (const auto& line : testing::DeskEvalSample()) {
      EXPECT_EQ(a.tokenizer.Encode(line), orig.Encode(line));
      EXPECT_EQ(b.tokenizer.Encode(line), orig.Encode(line));
    }
    // Saving again reproduces the files byte for byte.
    const fs::path again = TempDir(std::string(scheme) + "_again");
    SaveBundle(again, a.tokenizer, a.config, a.manifest.corpus_fingerprint);
    for (const char* f : {"manifest.json", "tokenizer.json", "vocab.txt"}) {
      EXPECT_EQ(Slurp(dir / f), Slurp(again / f)) << f;
    }
    fs::remove_all(dir);
    fs::remove_all(again);
  }
}

TEST(BundleTest, CwsBundle) {
  const fs::path dir = TempDir("cws");
  SaveSmall(dir, "pinyin-no-index", true);
  const Bundle b = LoadBundle(dir);
  EXPECT_TRUE(b.manifest.cws);
  EXPECT_EQ(b.manifest.vocab_size, 3000u);
  EXPECT_EQ(b.manifest.lexicon_size + b.manifest.subword_vocab_size, 3000u);
  const Tokenizer& orig = testing::SmallTokenizer("pinyin-no-index", Algorithm::kUnigram, true);
  for (const auto& line : testing::DeskEvalSample()) {
    EXPECT_EQ(b.tokenizer.Encode(line), orig.Encode(line));
  }
  fs::remove_all(dir);
}

TEST(BundleTest, MissingDirectory) {
  EXPECT_THROW(LoadBundle("/nonexistent/bundle"), IoError);
}

TEST(BundleTest, TamperedMapIsRejected) {
  const fs::path dir = TempDir("tamper");
  SaveSmall(dir, "pinyin");
  {
    std::ofstream out(dir / "map.txt", std::ios::app);
    out << "\U00030000\tzzz1\n";
  }
  try {
    LoadBundle(dir);
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("fingerprint mismatch"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(BundleTest, MismatchedVocabIsRejected) {
  const fs::path a = TempDir("mix_a"), b = TempDir("mix_b");
  SaveSmall(a, "pinyin");
  SaveSmall(b, "pinyin-no-index");
  fs::copy_file(b / "vocab.txt", a / "vocab.txt", fs::copy_options::overwrite_existing);
  EXPECT_THROW(LoadBundle(a), LoadError);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(BundleTest, TrainTokenizerErrors) {
  TokenizerConfig cfg;
  cfg.trainer.vocab_size = 3000;
  const EncodingTable t = LoadSchemeTable(cfg.scheme);
  EXPECT_THROW(TrainTokenizer(cfg, t, {"", ""}), ConfigError);
  cfg.cws = true;
  EXPECT_THROW(TrainTokenizer(cfg, t, testing::DeskSample()), ConfigError);
}

TEST(BundleTest, ReadLines) {
  const fs::path p = fs::temp_directory_path() / "subchar_readlines.txt";
  {
    std::ofstream out(p, std::ios::binary);
    out << "a\r\nb\n\nc";
  }
  EXPECT_EQ(ReadLines(p), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_THROW(ReadLines("/nonexistent.txt"), IoError);
  fs::remove(p);
}

}  // namespace
}  // namespace subchar
