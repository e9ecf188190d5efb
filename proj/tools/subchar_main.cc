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

// subchar: train, apply and analyse sub-character tokenizers.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "subchar/analysis.h"
#include "subchar/bundle.h"
#include "subchar/charmap.h"
#include "subchar/cws.h"
#include "subchar/errors.h"
#include "subchar/noise.h"
#include "subchar/subword.h"
#include "subchar/tokenizer.h"
#include "subchar/unicode.h"

namespace {

using namespace subchar;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Bad flag combinations discovered after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalOptions {
  uint64_t seed = 0;
  int threads = 1;
  bool quiet = false;
};

void PrintConfig(const std::string& command, ordered_json fields, const GlobalOptions& g) {
  ordered_json j = {{"command", command}, {"seed", g.seed}, {"threads", g.threads}};
  for (auto& [k, v] : fields.items()) j[k] = v;
  std::cerr << "config " << j.dump() << '\n';
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void Close(const std::string& path) {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw IoError("write failed: " + path);
    }
  }

 private:
  std::ofstream file_;
};

std::vector<std::string> ReadInput(const std::string& path) {
  if (path.empty() || path == "-") {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(std::cin, line)) lines.push_back(line);
    return lines;
  }
  return ReadLines(path);
}

// ---------------------------------------------------------------------------
// train

struct TrainOptions {
  std::string scheme = "pinyin";
  bool no_index = false;
  std::string algorithm = "unigram";
  size_t vocab_size = 22675;
  std::string corpus;
  std::string out;
  std::string map_file;
  bool cws = false;
  double word_ratio = 0.8;
  std::string dict;
  size_t max_piece_length = 24;
  size_t seed_size = TrainerConfig{}.seed_size;
  int em_iters = 2;
  double prune_fraction = 0.25;
  size_t min_pair_freq = 2;
};

int RunTrain(const TrainOptions& o, const GlobalOptions& g) {
  TokenizerConfig cfg;
  cfg.scheme = EncodingScheme::FromName(o.scheme);
  if (o.no_index) cfg.scheme.use_index = false;
  cfg.trainer.algorithm = ParseAlgorithm(o.algorithm);
  cfg.trainer.vocab_size = o.vocab_size;
  cfg.trainer.max_piece_length = o.max_piece_length;
  cfg.trainer.seed_size = o.seed_size;
  cfg.trainer.em_iterations = o.em_iters;
  cfg.trainer.prune_fraction = o.prune_fraction;
  cfg.trainer.bpe_min_pair_freq = o.min_pair_freq;
  cfg.trainer.threads = g.threads;
  cfg.trainer.verbose = !g.quiet;
  cfg.cws = o.cws;
  cfg.word_ratio = o.word_ratio;

  const std::string map_file =
      IsComputedScheme(cfg.scheme.kind)
          ? ""
          : (o.map_file.empty() ? DefaultMapFile(cfg.scheme.kind).string() : o.map_file);
  const std::string dict = o.dict.empty() ? DefaultDictionary().string() : o.dict;
  PrintConfig("train",
              {{"scheme", cfg.scheme.Name()},
               {"algorithm", AlgorithmName(cfg.trainer.algorithm)},
               {"vocab_size", cfg.trainer.vocab_size},
               {"corpus", o.corpus},
               {"out", o.out},
               {"map_file", map_file},
               {"cws", cfg.cws},
               {"word_ratio", cfg.word_ratio},
               {"dict", cfg.cws ? dict : ""},
               {"max_piece_length", cfg.trainer.max_piece_length},
               {"unigram_seed_size", cfg.trainer.seed_size},
               {"unigram_em_iters_per_round", cfg.trainer.em_iterations},
               {"unigram_prune_fraction", cfg.trainer.prune_fraction},
               {"bpe_min_pair_freq", cfg.trainer.bpe_min_pair_freq}},
              g);

  EncodingTable table = LoadSchemeTable(
      cfg.scheme, map_file.empty() ? std::nullopt : std::optional<std::filesystem::path>(map_file));
  const std::vector<std::string> corpus = ReadLines(o.corpus);
  std::shared_ptr<const ForwardMaxMatchSegmenter> segmenter;
  if (cfg.cws) {
    segmenter = std::make_shared<ForwardMaxMatchSegmenter>(ForwardMaxMatchSegmenter::FromFile(dict));
  }
  const auto start = std::chrono::steady_clock::now();
  const Tokenizer tok = TrainTokenizer(cfg, std::move(table), corpus, segmenter);
  SaveBundle(o.out, tok, cfg, CorpusFingerprint(corpus));
  if (!g.quiet) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "trained " << tok.vocab_size() << " ids";
    if (tok.lexicon()) std::cerr << " (" << tok.lexicon()->size() << " lexicon words)";
    std::cerr << " in " << FormatFixed(secs, 1) << " s -> " << o.out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tokenize

struct TokenizeOptions {
  std::string bundle;
  std::string input;
  std::string out;
  bool ids = false, pieces = false, offsets = false, decode = false;
  size_t max_len = 0;
};

std::vector<int32_t> ParseIds(const std::string& line, size_t lineno) {
  std::vector<int32_t> ids;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw ParseError("<ids>", lineno, "not an integer id: '" + tok + "'");
    }
    if (v < INT32_MIN || v > INT32_MAX) throw InvalidIdError(v, 0);
    ids.push_back(static_cast<int32_t>(v));
  }
  return ids;
}

int RunTokenize(const TokenizeOptions& o, const GlobalOptions& g) {
  const int modes = o.ids + o.pieces + o.offsets + o.decode;
  if (modes > 1) throw UsageError("choose one of --ids, --pieces, --offsets, --decode");
  const std::string mode = o.decode ? "decode" : o.pieces ? "pieces" : o.offsets ? "offsets" : "ids";
  PrintConfig("tokenize",
              {{"bundle", o.bundle},
               {"input", o.input.empty() ? "-" : o.input},
               {"out", o.out.empty() ? "-" : o.out},
               {"format", mode},
               {"max_len", o.max_len}},
              g);
  const Bundle bundle = LoadBundle(o.bundle);
  const Tokenizer& tok = bundle.tokenizer;
  const std::vector<std::string> lines = ReadInput(o.input);
  Output out(o.out);
  std::ostream& os = out.stream();
  const auto start = std::chrono::steady_clock::now();
  size_t n_tokens = 0;
  if (o.decode) {
    for (size_t i = 0; i < lines.size(); ++i) {
      const auto ids = ParseIds(lines[i], i + 1);
      n_tokens += ids.size();
      os << tok.Decode(ids) << '\n';
    }
  } else {
    const std::optional<size_t> max_len = o.max_len ? std::optional<size_t>(o.max_len) : std::nullopt;
    const auto results = tok.TokenizeBatch(lines, g.threads, max_len);
    std::string buf;
    for (const TokenizedOutput& r : results) {
      buf.clear();
      n_tokens += r.size();
      for (size_t t = 0; t < r.size(); ++t) {
        if (t) buf += ' ';
        if (mode == "ids") {
          buf += std::to_string(r.ids[t]);
        } else if (mode == "pieces") {
          buf += EscapePiece(Utf8ToUtf32(r.tokens[t]), /*escape_space=*/true);
        } else {
          buf += std::to_string(r.offsets[t].first) + ":" + std::to_string(r.offsets[t].second);
        }
      }
      buf += '\n';
      os << buf;
    }
  }
  out.Close(o.out);
  if (!g.quiet) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "throughput " << lines.size() << " lines, " << n_tokens << " tokens, "
              << FormatFixed(secs > 0 ? static_cast<double>(n_tokens) / secs : 0.0, 0)
              << " tokens/sec\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// noise

struct NoiseOptions {
  std::string bundle;
  std::string input;
  std::string ratios = "7.5,15,22.5,30,37.5";
};

std::vector<std::pair<std::string, double>> ParsePercentList(const std::string& text) {
  std::vector<std::pair<std::string, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    size_t used = 0;
    double pct = 0.0;
    try {
      pct = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || pct < 0.0 || pct > 100.0) {
      throw UsageError("ratio must be a percentage in [0, 100]: '" + item + "'");
    }
    out.emplace_back(item, pct / 100.0);
  }
  return out;
}

int RunNoise(const NoiseOptions& o, const GlobalOptions& g) {
  const auto ratios = ParsePercentList(o.ratios);
  ordered_json list = ordered_json::array();
  for (const auto& [s, r] : ratios) list.push_back(r);
  PrintConfig("noise", {{"bundle", o.bundle}, {"input", o.input}, {"ratios", list}}, g);
  const Bundle bundle = LoadBundle(o.bundle);
  if (bundle.tokenizer.table().scheme().kind != SchemeKind::kPinyin) {
    throw UsageError("noise injection needs a pinyin bundle, got " +
                     bundle.tokenizer.table().scheme().Name());
  }
  const std::vector<std::string> lines = ReadLines(o.input);
  std::vector<double> values;
  for (const auto& [s, r] : ratios) values.push_back(r);
  const auto results = NoiseSweep(bundle.tokenizer.table(), g.seed, lines, values, g.threads);

  const std::string report_path = o.input + ".noise-report.jsonl";
  Output report(report_path);
  for (size_t k = 0; k < results.size(); ++k) {
    const std::string path = o.input + ".noise-" + ratios[k].first;
    Output file(path);
    size_t replaced = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
      file.stream() << results[k].lines[i] << '\n';
      report.stream() << NoiseReportJson(results[k].reports[i], i) << '\n';
      replaced += results[k].reports[i].replaced.size();
    }
    file.Close(path);
    if (!g.quiet) {
      std::cerr << "ratio " << ratios[k].first << "%: " << replaced << " replacements -> "
                << path << '\n';
    }
  }
  report.Close(report_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stats

struct StatsOptions {
  std::string bundle;
  std::string baseline;
  std::string corpus;
  std::string out;
};

std::string BundleName(const std::string& dir) {
  std::filesystem::path p(dir);
  if (!p.has_filename()) p = p.parent_path();
  return p.filename().string();
}

int RunStats(const StatsOptions& o, const GlobalOptions& g) {
  PrintConfig("stats",
              {{"bundle", o.bundle},
               {"baseline_bundle", o.baseline},
               {"corpus", o.corpus},
               {"out", o.out.empty() ? "-" : o.out}},
              g);
  const std::vector<std::string> corpus = ReadLines(o.corpus);
  const Bundle bundle = LoadBundle(o.bundle);
  std::vector<CorpusStats> rows = {
      ComputeStats(bundle.tokenizer, corpus, BundleName(o.bundle), g.threads)};
  const bool with_baseline = !o.baseline.empty();
  if (with_baseline) {
    const Bundle base = LoadBundle(o.baseline);
    CorpusStats b = ComputeStats(base.tokenizer, corpus, BundleName(o.baseline), g.threads);
    rows[0].relative_size_vs_baseline =
        static_cast<double>(rows[0].tokenized_bytes) / static_cast<double>(b.tokenized_bytes);
    b.relative_size_vs_baseline = 1.0;
    rows.push_back(std::move(b));
  }
  Output out(o.out);
  out.stream() << CsvLine(StatsCsvHeader(with_baseline)) << '\n';
  for (const auto& r : rows) out.stream() << CsvLine(StatsCsvRow(r, with_baseline)) << '\n';
  out.Close(o.out);
  if (!g.quiet) {
    for (const auto& r : rows) {
      std::cerr << r.name << ": " << FormatFixed(r.avg_tokens_per_example, 2)
                << " tokens/example over " << r.examples << " examples";
      if (r.relative_size_vs_baseline) {
        std::cerr << ", relative size " << FormatFixed(100.0 * *r.relative_size_vs_baseline, 1)
                  << "%";
      }
      std::cerr << '\n';
      for (PieceCategory c : kAllCategories) {
        std::cerr << "  " << PieceCategoryName(c) << ": " << r.vocab_breakdown.count(c) << " ("
                  << FormatFixed(100.0 * r.vocab_breakdown.fraction(c), 1) << "%)\n";
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen-random-map

struct RandomMapOptions {
  std::string chars_from;
  std::string out;
};

int RunGenRandomMap(const RandomMapOptions& o, const GlobalOptions& g) {
  const std::string source =
      o.chars_from.empty() ? DefaultMapFile(SchemeKind::kPinyin).string() : o.chars_from;
  const std::string out =
      o.out.empty() ? DefaultMapFile(SchemeKind::kRandomIndex).string() : o.out;
  PrintConfig("gen-random-map", {{"chars_from", source}, {"out", out}}, g);
  std::vector<char32_t> chars;
  for (const std::string& line : ReadLines(source)) {
    if (line.empty() || line[0] == '%') continue;
    const std::u32string u = Utf8ToUtf32(line.substr(0, line.find('\t')));
    if (u.size() == 1 && IsCjk(u[0])) chars.push_back(u[0]);
  }
  const auto entries = GenerateRandomIndexMap(chars, g.seed);
  WriteMapFile(out, entries,
               {"random_index map, seed " + std::to_string(g.seed) + ", " +
                std::to_string(entries.size()) + " characters"});
  if (!g.quiet) std::cerr << "wrote " << entries.size() << " entries -> " << out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string scheme = "pinyin";
  bool no_index = false;
  std::string algorithm = "unigram";
  std::string train;
  std::string eval;
  std::vector<size_t> sizes = {22675, 40000, 60000};
  std::string out;
};

int RunSweep(const SweepOptions& o, const GlobalOptions& g) {
  TokenizerConfig cfg;
  cfg.scheme = EncodingScheme::FromName(o.scheme);
  if (o.no_index) cfg.scheme.use_index = false;
  cfg.trainer.algorithm = ParseAlgorithm(o.algorithm);
  cfg.trainer.verbose = false;
  PrintConfig("sweep",
              {{"scheme", cfg.scheme.Name()},
               {"algorithm", AlgorithmName(cfg.trainer.algorithm)},
               {"train", o.train},
               {"eval", o.eval},
               {"sizes", o.sizes},
               {"out", o.out.empty() ? "-" : o.out}},
              g);
  const EncodingTable table = LoadSchemeTable(cfg.scheme);
  const auto rows = VocabSizeSweep(cfg, table, ReadLines(o.train), ReadLines(o.eval), o.sizes,
                                   g.threads);
  Output out(o.out);
  out.stream() << "tokenizer,vocab_size,avg_tokens_per_example\n";
  for (const auto& r : rows) {
    out.stream() << CsvLine({cfg.scheme.Name(), std::to_string(r.vocab_size),
                             FormatFixed(r.avg_length, 4)})
                 << '\n';
  }
  out.Close(o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-character tokenization toolkit for Chinese"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress progress output");

  TrainOptions train;
  auto* t = app.add_subcommand("train", "Train a tokenizer bundle");
  t->add_option("--scheme", train.scheme, "Encoding scheme (pinyin, zhuyin, stroke, wubi, "
                                          "zhengma, cangjie, byte, random_index, raw)")
      ->capture_default_str();
  t->add_flag("--no-index", train.no_index, "Drop disambiguation indices");
  t->add_option("--algorithm", train.algorithm, "unigram, bpe or char")->capture_default_str();
  t->add_option("--vocab-size", train.vocab_size, "Total vocabulary size")->capture_default_str();
  t->add_option("--corpus", train.corpus, "Training corpus, one example per line")
      ->required()
      ->check(CLI::ExistingFile);
  t->add_option("--out", train.out, "Bundle directory")->required();
  t->add_option("--map-file", train.map_file, "Mapping file (default: data directory)");
  t->add_flag("--cws", train.cws, "Add a word lexicon front stage");
  t->add_option("--word-ratio", train.word_ratio, "Lexicon share of the vocabulary")
      ->capture_default_str();
  t->add_option("--dict", train.dict, "Segmenter dictionary (default: data directory)");
  t->add_option("--max-piece-length", train.max_piece_length)->capture_default_str();
  t->add_option("--seed-size", train.seed_size, "Unigram seed vocabulary size");
  t->add_option("--em-iters", train.em_iters)->capture_default_str();
  t->add_option("--prune-fraction", train.prune_fraction)->capture_default_str();
  t->add_option("--min-pair-freq", train.min_pair_freq)->capture_default_str();

  TokenizeOptions tok;
  auto* k = app.add_subcommand("tokenize", "Tokenize or decode a file");
  k->add_option("--bundle", tok.bundle)->required();
  k->add_option("--input", tok.input, "Input file (default stdin)");
  k->add_option("--out", tok.out, "Output file (default stdout)");
  k->add_flag("--ids", tok.ids, "Emit token ids (default)");
  k->add_flag("--pieces", tok.pieces, "Emit escaped token strings");
  k->add_flag("--offsets", tok.offsets, "Emit start:end character spans");
  k->add_flag("--decode", tok.decode, "Read id lines and decode them");
  k->add_option("--max-len", tok.max_len, "Truncate to at most N tokens");

  NoiseOptions noise;
  auto* n = app.add_subcommand("noise", "Inject homophone typos");
  n->add_option("--bundle", noise.bundle)->required();
  n->add_option("--input", noise.input)->required()->check(CLI::ExistingFile);
  n->add_option("--ratios", noise.ratios, "Comma-separated percentages")->capture_default_str();

  StatsOptions stats;
  auto* s = app.add_subcommand("stats", "Efficiency statistics as CSV");
  s->add_option("--bundle", stats.bundle)->required();
  s->add_option("--baseline-bundle", stats.baseline);
  s->add_option("--corpus", stats.corpus)->required()->check(CLI::ExistingFile);
  s->add_option("--out", stats.out, "CSV file (default stdout)");

  RandomMapOptions rmap;
  auto* r = app.add_subcommand("gen-random-map", "Generate a random_index mapping file");
  r->add_option("--chars-from", rmap.chars_from, "Mapping file supplying the characters");
  r->add_option("--out", rmap.out);

  SweepOptions sweep;
  auto* w = app.add_subcommand("sweep", "Average length across vocabulary sizes");
  w->add_option("--scheme", sweep.scheme)->capture_default_str();
  w->add_flag("--no-index", sweep.no_index);
  w->add_option("--algorithm", sweep.algorithm)->capture_default_str();
  w->add_option("--train", sweep.train)->required()->check(CLI::ExistingFile);
  w->add_option("--eval", sweep.eval)->required()->check(CLI::ExistingFile);
  w->add_option("--sizes", sweep.sizes)->delimiter(',')->capture_default_str();
  w->add_option("--out", sweep.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (t->parsed()) return RunTrain(train, g);
    if (k->parsed()) return RunTokenize(tok, g);
    if (n->parsed()) return RunNoise(noise, g);
    if (s->parsed()) return RunStats(stats, g);
    if (r->parsed()) return RunGenRandomMap(rmap, g);
    if (w->parsed()) return RunSweep(sweep, g);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
