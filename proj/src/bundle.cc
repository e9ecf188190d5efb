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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>

#include "subchar/errors.h"
#include "subchar/unicode.h"

namespace subchar {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

void WriteJson(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

// Splits a line into subword runs, dropping lexicon words.
void AppendRemainder(std::u32string_view line, const Segmenter& segmenter,
                     const WordLexicon& lexicon, std::vector<std::u32string>* out) {
  size_t pending = 0;
  for (const WordSpan& sp : segmenter.Segment(line)) {
    if (sp.size() < 2 || !lexicon.Contains(line.substr(sp.begin, sp.size()))) continue;
    if (sp.begin > pending) out->emplace_back(line.substr(pending, sp.begin - pending));
    pending = sp.end;
  }
  if (line.size() > pending) out->emplace_back(line.substr(pending));
}

}  // namespace

std::filesystem::path DefaultDataDir() {
  if (const char* env = std::getenv("SUBCHAR_DATA_DIR"); env && *env) return env;
  return SUBCHAR_DEFAULT_DATA_DIR;
}

std::filesystem::path DefaultMapFile(SchemeKind kind) {
  return DefaultDataDir() / "maps" / (std::string(SchemeKindName(kind)) + ".map");
}

std::filesystem::path DefaultDictionary() { return DefaultDataDir() / "dict" / "words.txt"; }

EncodingTable LoadSchemeTable(const EncodingScheme& scheme,
                              const std::optional<std::filesystem::path>& map_file) {
  if (IsComputedScheme(scheme.kind)) {
    if (map_file) throw ConfigError("scheme " + scheme.Name() + " takes no mapping file");
    return EncodingTable::Computed(scheme);
  }
  const auto path = map_file ? *map_file : DefaultMapFile(scheme.kind);
  if (!std::filesystem::exists(path)) {
    throw IoError("mapping file not found: " + path.string());
  }
  return EncodingTable::FromFile(scheme, path);
}

std::vector<char32_t> RequiredSymbols(const EncodingTable& table) {
  std::set<char32_t> s;
  for (char32_t c = 0x20; c < 0x7F; ++c) s.insert(c);
  s.insert({U'\t', U'\n', U'\r'});
  // CJK symbols and punctuation, fullwidth ASCII variants.
  for (char32_t c = 0x3000; c <= 0x303F; ++c) s.insert(c);
  for (char32_t c = 0xFF01; c <= 0xFF5E; ++c) s.insert(c);
  for (char32_t c : table.EmitAlphabet()) s.insert(c);
  return {s.begin(), s.end()};
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
  return lines;
}

std::string CorpusFingerprint(const std::vector<std::string>& lines) {
  uint64_t h = Fnv1a64("");
  for (const auto& l : lines) {
    h = Fnv1a64(l, h);
    h = Fnv1a64("\n", h);
  }
  return ToHex64(h);
}

Tokenizer TrainTokenizer(const TokenizerConfig& config, EncodingTable table,
                         const std::vector<std::string>& corpus,
                         std::shared_ptr<const ForwardMaxMatchSegmenter> segmenter) {
  std::vector<std::u32string> lines;
  lines.reserve(corpus.size());
  for (const auto& l : corpus) {
    std::u32string u = Utf8ToUtf32(NormalizeNfc(l));
    if (!u.empty()) lines.push_back(std::move(u));
  }
  if (lines.empty()) throw ConfigError("training corpus is empty");

  TrainerConfig trainer = config.trainer;
  std::optional<WordLexicon> lexicon;
  std::vector<std::u32string> remainder;
  const std::vector<std::u32string>* train_lines = &lines;
  if (config.cws) {
    if (!segmenter) throw ConfigError("CWS training needs a segmenter");
    lexicon = BuildLexicon(lines, *segmenter, config.trainer.vocab_size, config.word_ratio);
    if (lexicon->size() >= trainer.vocab_size) {
      throw ConfigError("lexicon leaves no room for the subword vocabulary");
    }
    trainer.vocab_size -= lexicon->size();
    for (const auto& [w, f] : lexicon->entries()) {
      trainer.excluded_pieces.insert(EncodeLine(table, w));
    }
    for (const auto& l : lines) AppendRemainder(l, *segmenter, *lexicon, &remainder);
    train_lines = &remainder;
  }

  std::vector<std::u32string> encoded;
  encoded.reserve(train_lines->size());
  for (const auto& l : *train_lines) encoded.push_back(EncodeLine(table, l));
  std::vector<char32_t> required = RequiredSymbols(table);
  required.insert(required.end(), trainer.required_symbols.begin(),
                  trainer.required_symbols.end());
  trainer.required_symbols = std::move(required);

  SubwordModel model = Train(encoded, trainer);
  return Tokenizer(std::move(table), std::move(model), std::move(lexicon),
                   config.cws ? segmenter : nullptr);
}

void SaveBundle(const std::filesystem::path& dir, const Tokenizer& tokenizer,
                const TokenizerConfig& config, const std::string& corpus_fingerprint) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create bundle directory " + dir.string() + ": " + ec.message());
  const EncodingTable& table = tokenizer.table();
  const bool computed = IsComputedScheme(table.scheme().kind);

  json files = {{"config", "tokenizer.json"}, {"vocab", "vocab.txt"}};
  if (!computed) {
    WriteMapFile(dir / "map.txt", table.BaseEntries(),
                 {"scheme " + std::string(SchemeKindName(table.scheme().kind))});
    files["map"] = "map.txt";
  }
  {
    std::ofstream out(dir / "vocab.txt");
    if (!out) throw IoError("cannot write " + (dir / "vocab.txt").string());
    tokenizer.model().Save(out, {{"scheme", table.scheme().Name()},
                                 {"table-fingerprint", table.fingerprint()}});
  }
  if (const WordLexicon* lex = tokenizer.lexicon()) {
    const auto* fmm = dynamic_cast<const ForwardMaxMatchSegmenter*>(tokenizer.segmenter());
    if (!fmm) throw ConfigError("only the forward-max-match segmenter can be bundled");
    lex->Save(dir / "lexicon.txt");
    std::ofstream out(dir / "segmenter.dict");
    if (!out) throw IoError("cannot write " + (dir / "segmenter.dict").string());
    for (const auto& w : fmm->words()) out << Utf32ToUtf8(w) << '\n';
    files["lexicon"] = "lexicon.txt";
    files["segmenter"] = "segmenter.dict";
  }

  const TrainerConfig& t = config.trainer;
  WriteJson(dir / "tokenizer.json",
            {{"scheme", table.scheme().Name()},
             {"algorithm", AlgorithmName(t.algorithm)},
             {"vocab_size", t.vocab_size},
             {"max_piece_length", t.max_piece_length},
             {"unigram_seed_size", t.seed_size},
             {"unigram_em_iters_per_round", t.em_iterations},
             {"unigram_prune_fraction", t.prune_fraction},
             {"bpe_min_pair_freq", t.bpe_min_pair_freq},
             {"cws", config.cws},
             {"word_ratio", config.word_ratio},
             {"normalization", "nfc"},
             {"specials", SubwordModel::SpecialTokens()}});
  WriteJson(dir / "manifest.json",
            {{"format_version", kFormatVersion},
             {"scheme", table.scheme().Name()},
             {"use_index", table.scheme().use_index},
             {"algorithm", AlgorithmName(tokenizer.model().algorithm())},
             {"vocab_size", tokenizer.vocab_size()},
             {"subword_vocab_size", tokenizer.model().size()},
             {"lexicon_size", tokenizer.lexicon() ? tokenizer.lexicon()->size() : 0},
             {"cws", tokenizer.lexicon() != nullptr},
             {"word_ratio", config.cws ? config.word_ratio : 0.0},
             {"corpus_fingerprint", corpus_fingerprint},
             {"table_fingerprint", table.fingerprint()},
             {"files", files}});
}

Bundle LoadBundle(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("bundle directory not found: " + dir.string());
  }
  const json m = ReadJson(dir / "manifest.json");
  const json c = ReadJson(dir / "tokenizer.json");
  BundleManifest manifest;
  TokenizerConfig config;
  try {
    manifest.format_version = m.at("format_version").get<int>();
    if (manifest.format_version != kFormatVersion) {
      throw LoadError("unsupported bundle format version " +
                      std::to_string(manifest.format_version));
    }
    manifest.scheme = m.at("scheme").get<std::string>();
    manifest.use_index = m.at("use_index").get<bool>();
    manifest.algorithm = m.at("algorithm").get<std::string>();
    manifest.vocab_size = m.at("vocab_size").get<size_t>();
    manifest.subword_vocab_size = m.at("subword_vocab_size").get<size_t>();
    manifest.lexicon_size = m.at("lexicon_size").get<size_t>();
    manifest.cws = m.at("cws").get<bool>();
    manifest.word_ratio = m.at("word_ratio").get<double>();
    manifest.corpus_fingerprint = m.at("corpus_fingerprint").get<std::string>();
    manifest.table_fingerprint = m.at("table_fingerprint").get<std::string>();

    config.scheme = EncodingScheme::FromName(c.at("scheme").get<std::string>());
    config.trainer.algorithm = ParseAlgorithm(c.at("algorithm").get<std::string>());
    config.trainer.vocab_size = c.at("vocab_size").get<size_t>();
    config.trainer.max_piece_length = c.at("max_piece_length").get<size_t>();
    config.trainer.seed_size = c.at("unigram_seed_size").get<size_t>();
    config.trainer.em_iterations = c.at("unigram_em_iters_per_round").get<int>();
    config.trainer.prune_fraction = c.at("unigram_prune_fraction").get<double>();
    config.trainer.bpe_min_pair_freq = c.at("bpe_min_pair_freq").get<size_t>();
    config.cws = c.at("cws").get<bool>();
    config.word_ratio = c.at("word_ratio").get<double>();
  } catch (const json::exception& e) {
    throw LoadError(dir.string() + ": malformed bundle metadata: " + e.what());
  }
  if (config.scheme.Name() != manifest.scheme ||
      config.scheme.use_index != manifest.use_index) {
    throw LoadError("bundle config and manifest disagree on the scheme");
  }

  EncodingTable table = IsComputedScheme(config.scheme.kind)
                            ? EncodingTable::Computed(config.scheme)
                            : EncodingTable::FromFile(config.scheme, dir / "map.txt");
  std::map<std::string, std::string> header;
  std::ifstream vin(dir / "vocab.txt");
  if (!vin) throw IoError("cannot open " + (dir / "vocab.txt").string());
  SubwordModel model = SubwordModel::Load(vin, (dir / "vocab.txt").string(), &header);

  const std::string vocab_fp = header.count("table-fingerprint") ? header["table-fingerprint"] : "";
  if (table.fingerprint() != manifest.table_fingerprint || vocab_fp != manifest.table_fingerprint) {
    throw LoadError("scheme fingerprint mismatch: manifest " + manifest.table_fingerprint +
                    ", mapping table " + table.fingerprint() + ", vocab " +
                    (vocab_fp.empty() ? "<none>" : vocab_fp));
  }
  if (header.count("scheme") && header["scheme"] != manifest.scheme) {
    throw LoadError("vocab was trained for scheme " + header["scheme"] + ", bundle declares " +
                    manifest.scheme);
  }

  std::optional<WordLexicon> lexicon;
  std::shared_ptr<const Segmenter> segmenter;
  if (manifest.cws) {
    lexicon = WordLexicon::Load(dir / "lexicon.txt");
    segmenter = std::make_shared<ForwardMaxMatchSegmenter>(
        ForwardMaxMatchSegmenter::FromFile(dir / "segmenter.dict"));
  }
  Tokenizer tokenizer(std::move(table), std::move(model), std::move(lexicon),
                      std::move(segmenter));
  if (tokenizer.vocab_size() != manifest.vocab_size) {
    throw LoadError("bundle vocab size " + std::to_string(tokenizer.vocab_size()) +
                    " does not match manifest " + std::to_string(manifest.vocab_size));
  }
  return Bundle{std::move(tokenizer), std::move(config), std::move(manifest)};
}

}  // namespace subchar
