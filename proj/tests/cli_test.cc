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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "subchar/bundle.h"
#include "subchar/unicode.h"
#include "test_util.h"

namespace subchar {
namespace {

namespace fs = std::filesystem;

const fs::path& Work() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "subchar_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result RunCli(const std::string& args) {
  static int counter = 0;
  const fs::path out = Work() / ("stdout_" + std::to_string(counter));
  const fs::path err = Work() / ("stderr_" + std::to_string(counter++));
  const std::string cmd = std::string(SUBCHAR_CLI_PATH) + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = Slurp(out);
  r.err = Slurp(err);
  return r;
}

const fs::path& Corpus() {
  static const fs::path p = [] {
    const fs::path c = Work() / "corpus.txt";
    std::ofstream out(c, std::ios::binary);
    const auto& lines = testing::DeskSample();
    for (size_t i = 0; i < 300; ++i) out << lines[i] << '\n';
    return c;
  }();
  return p;
}

// Trains once per scheme and returns the bundle directory.
fs::path TrainedBundle(const std::string& scheme_flags, const std::string& name) {
  const fs::path dir = Work() / name;
  if (!fs::exists(dir / "manifest.json")) {
    const Result r = RunCli("--quiet train " + scheme_flags + " --vocab-size 2500 --corpus " +
                         Corpus().string() + " --out " + dir.string());
    EXPECT_EQ(r.code, 0) << r.err;
  }
  return dir;
}

nlohmann::json Manifest(const fs::path& dir) {
  return nlohmann::json::parse(Slurp(dir / "manifest.json"));
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("--bogus").code, 2);
  EXPECT_EQ(RunCli("train --out /tmp/x").code, 2);
  EXPECT_EQ(RunCli("tokenize --bundle x --ids --pieces").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST(CliTest, VocabBelowInventoryIsConfigError) {
  const Result r = RunCli("train --vocab-size 3 --corpus " + Corpus().string() + " --out " +
                       (Work() / "tiny").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("vocab_size"), std::string::npos) << r.err;
}

TEST(CliTest, MissingCorpusIsUsageOrIoError) {
  const Result r = RunCli("train --corpus /nonexistent.txt --out " + (Work() / "none").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.code, -1);
}

TEST(CliTest, TrainWritesNoIndexBundle) {
  const fs::path dir = TrainedBundle("--scheme pinyin --no-index", "noindex");
  const auto m = Manifest(dir);
  EXPECT_EQ(m.at("scheme"), "pinyin-no-index");
  EXPECT_EQ(m.at("use_index"), false);
  EXPECT_EQ(m.at("vocab_size"), 2500);
  EXPECT_FALSE(m.at("table_fingerprint").get<std::string>().empty());
  EXPECT_FALSE(m.at("corpus_fingerprint").get<std::string>().empty());
}

TEST(CliTest, ConfigLineOnStderr) {
  const fs::path dir = TrainedBundle("--scheme pinyin", "pinyin");
  const Result r = RunCli("tokenize --bundle " + dir.string() + " --input " + Corpus().string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.err.rfind("config {", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("tokens/sec"), std::string::npos);
  const Result quiet =
      RunCli("--quiet tokenize --bundle " + dir.string() + " --input " + Corpus().string());
  EXPECT_EQ(quiet.err.find("tokens/sec"), std::string::npos);
  EXPECT_NE(quiet.err.find("config {"), std::string::npos);
}

TEST(CliTest, TokenizeDecodeRoundTrip) {
  const fs::path dir = TrainedBundle("--scheme pinyin", "pinyin");
  const fs::path ids = Work() / "ids.txt";
  const fs::path back = Work() / "back.txt";
  ASSERT_EQ(RunCli("--quiet tokenize --bundle " + dir.string() + " --input " + Corpus().string() +
                " --out " + ids.string())
                .code,
            0);
  ASSERT_EQ(RunCli("--quiet tokenize --decode --bundle " + dir.string() + " --input " +
                ids.string() + " --out " + back.string())
                .code,
            0);
  EXPECT_EQ(Slurp(back), Slurp(Corpus()));
}

TEST(CliTest, DecodeRejectsBadIds) {
  const fs::path dir = TrainedBundle("--scheme pinyin", "pinyin");
  const fs::path bad = Work() / "bad_ids.txt";
  std::ofstream(bad) << "5 99999999\n";
  EXPECT_EQ(RunCli("tokenize --decode --bundle " + dir.string() + " --input " + bad.string()).code,
            1);
  std::ofstream(bad) << "5 x\n";
  EXPECT_NE(RunCli("tokenize --decode --bundle " + dir.string() + " --input " + bad.string()).code,
            0);
}

TEST(CliTest, OffsetsTileEachLine) {
  const fs::path dir = TrainedBundle("--scheme pinyin --no-index", "noindex");
  const Result r =
      RunCli("--quiet tokenize --offsets --bundle " + dir.string() + " --input " + Corpus().string());
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  size_t i = 0;
  const auto& lines = testing::DeskSample();
  while (std::getline(in, line)) {
    const size_t n = Utf8ToUtf32(NormalizeNfc(lines[i++])).size();
    std::istringstream ls(line);
    std::string span;
    uint32_t max_end = 0;
    bool first = true;
    while (ls >> span) {
      const auto colon = span.find(':');
      const uint32_t b = std::stoul(span.substr(0, colon));
      const uint32_t e = std::stoul(span.substr(colon + 1));
      EXPECT_LT(b, e);
      if (first) {
        EXPECT_EQ(b, 0u);
      }
      EXPECT_LE(b, max_end);
      max_end = std::max(max_end, e);
      first = false;
    }
    EXPECT_EQ(max_end, n);
  }
  EXPECT_EQ(i, 300u);
}

TEST(CliTest, PiecesAreEscaped) {
  const fs::path dir = TrainedBundle("--scheme pinyin", "pinyin");
  const fs::path in = Work() / "space.txt";
  std::ofstream(in) << "中 国\n";
  const Result r =
      RunCli("--quiet tokenize --pieces --bundle " + dir.string() + " --input " + in.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\\s"), std::string::npos) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

TEST(CliTest, ThreadsDoNotChangeOutputs) {
  const fs::path a = Work() / "thr1", b = Work() / "thr3";
  ASSERT_EQ(RunCli("--quiet --threads 1 train --scheme wubi --vocab-size 2500 --corpus " +
                Corpus().string() + " --out " + a.string())
                .code,
            0);
  ASSERT_EQ(RunCli("--quiet --threads 3 train --scheme wubi --vocab-size 2500 --corpus " +
                Corpus().string() + " --out " + b.string())
                .code,
            0);
  for (const char* f : {"manifest.json", "vocab.txt", "map.txt"}) {
    EXPECT_EQ(Slurp(a / f), Slurp(b / f)) << f;
  }
  const Result x =
      RunCli("--quiet --threads 1 tokenize --bundle " + a.string() + " --input " + Corpus().string());
  const Result y =
      RunCli("--quiet --threads 4 tokenize --bundle " + a.string() + " --input " + Corpus().string());
  EXPECT_EQ(x.out, y.out);
  EXPECT_FALSE(x.out.empty());
}

TEST(CliTest, ScrambledBundleExitsOneWithFingerprints) {
  const fs::path src = TrainedBundle("--scheme pinyin", "pinyin");
  const fs::path dir = Work() / "scrambled";
  fs::remove_all(dir);
  fs::copy(src, dir);
  fs::copy_file(TrainedBundle("--scheme pinyin --no-index", "noindex") / "map.txt",
                dir / "map.txt", fs::copy_options::overwrite_existing);
  {
    std::ofstream(dir / "map.txt", std::ios::app) << "\U00030000\tzzz1\n";
  }
  const Result r = RunCli("tokenize --bundle " + dir.string() + " --input " + Corpus().string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("fingerprint mismatch"), std::string::npos) << r.err;
}

TEST(CliTest, NoiseWritesOneFilePerRatio) {
  const fs::path dir = TrainedBundle("--scheme pinyin --no-index", "noindex");
  const fs::path in = Work() / "noise_in.txt";
  fs::copy_file(Corpus(), in, fs::copy_options::overwrite_existing);
  ASSERT_EQ(RunCli("--quiet --seed 11 noise --bundle " + dir.string() + " --input " + in.string() +
                " --ratios 7.5,15,22.5,30,37.5")
                .code,
            0);
  std::map<std::string, std::string> first;
  for (const char* pct : {"7.5", "15", "22.5", "30", "37.5"}) {
    const fs::path f = in.string() + ".noise-" + pct;
    ASSERT_TRUE(fs::exists(f)) << f;
    first[pct] = Slurp(f);
    EXPECT_NE(first[pct], Slurp(in));
  }
  const std::string report = Slurp(in.string() + ".noise-report.jsonl");
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 5 * 300);
  // Same seed, same bytes.
  ASSERT_EQ(RunCli("--quiet --seed 11 --threads 2 noise --bundle " + dir.string() + " --input " +
                in.string() + " --ratios 7.5,15,22.5,30,37.5")
                .code,
            0);
  for (const auto& [pct, text] : first) EXPECT_EQ(Slurp(in.string() + ".noise-" + pct), text);
  EXPECT_EQ(Slurp(in.string() + ".noise-report.jsonl"), report);

  ASSERT_EQ(RunCli("--quiet noise --bundle " + dir.string() + " --input " + in.string() +
                " --ratios 0")
                .code,
            0);
  EXPECT_EQ(Slurp(in.string() + ".noise-0"), Slurp(in));
  EXPECT_EQ(RunCli("noise --bundle " + dir.string() + " --input " + in.string() + " --ratios 150")
                .code,
            2);
}

TEST(CliTest, NoiseNeedsPinyinBundle) {
  const fs::path dir = Work() / "thr1";
  if (!fs::exists(dir / "manifest.json")) {
    ASSERT_EQ(RunCli("--quiet train --scheme wubi --vocab-size 2500 --corpus " +
                  Corpus().string() + " --out " + dir.string())
                  .code,
              0);
  }
  EXPECT_EQ(RunCli("noise --bundle " + dir.string() + " --input " + Corpus().string()).code, 2);
}

TEST(CliTest, StatsCsv) {
  const fs::path sub = TrainedBundle("--scheme pinyin --no-index", "noindex");
  const fs::path chr = TrainedBundle("--scheme raw --algorithm char", "char");
  const Result plain =
      RunCli("--quiet stats --bundle " + sub.string() + " --corpus " + Corpus().string());
  ASSERT_EQ(plain.code, 0) << plain.err;
  const Result rel = RunCli("--quiet stats --bundle " + sub.string() + " --baseline-bundle " +
                         chr.string() + " --corpus " + Corpus().string());
  ASSERT_EQ(rel.code, 0) << rel.err;
  EXPECT_EQ(plain.out.find("relative_size_vs_baseline"), std::string::npos);
  EXPECT_NE(rel.out.find("relative_size_vs_baseline"), std::string::npos);
  EXPECT_NE(plain.out.find("vocab_combination"), std::string::npos);
  const Result again = RunCli("--quiet --threads 3 stats --bundle " + sub.string() +
                           " --baseline-bundle " + chr.string() + " --corpus " +
                           Corpus().string());
  EXPECT_EQ(again.out, rel.out);
  // Header plus one row per tokenizer, same column count.
  std::istringstream in(rel.out);
  std::string line;
  std::vector<size_t> commas;
  while (std::getline(in, line)) commas.push_back(std::count(line.begin(), line.end(), ','));
  ASSERT_GE(commas.size(), 2u);
  for (size_t c : commas) EXPECT_EQ(c, commas[0]);
}

TEST(CliTest, CwsLexiconShareInManifest) {
  const fs::path dir = Work() / "cws";
  const Result r = RunCli("--quiet train --scheme pinyin --no-index --cws --word-ratio 0.8 "
                       "--vocab-size 2000 --corpus " +
                       Corpus().string() + " --out " + dir.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = Manifest(dir);
  EXPECT_EQ(m.at("lexicon_size"), 1600);
  EXPECT_EQ(m.at("vocab_size"), 2000);
  EXPECT_EQ(m.at("subword_vocab_size"), 400);
}

TEST(CliTest, RandomMapIsReproducible) {
  const fs::path a = Work() / "ra.map", b = Work() / "rb.map";
  const std::string src = std::string(SUBCHAR_TEST_DATA_DIR) + "/pinyin_toy.map";
  ASSERT_EQ(RunCli("--quiet --seed 5 gen-random-map --chars-from " + src + " --out " + a.string())
                .code,
            0);
  ASSERT_EQ(RunCli("--quiet --seed 5 gen-random-map --chars-from " + src + " --out " + b.string())
                .code,
            0);
  EXPECT_EQ(Slurp(a), Slurp(b));
  const auto t = EncodingTable::FromFile(EncodingScheme::FromName("random_index"), a);
  EXPECT_EQ(t.size(), 8u);
  EXPECT_TRUE(t.injective());
}

}  // namespace
}  // namespace subchar
