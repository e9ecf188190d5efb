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

#ifndef SUBCHAR_BUNDLE_H_
#define SUBCHAR_BUNDLE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subchar/charmap.h"
#include "subchar/cws.h"
#include "subchar/subword.h"
#include "subchar/tokenizer.h"

namespace subchar {

struct TokenizerConfig {
  EncodingScheme scheme;
  TrainerConfig trainer;
  bool cws = false;
  double word_ratio = 0.8;
};

// Mapping files, dictionary and desk corpus: $SUBCHAR_DATA_DIR, else the
// directory compiled in.
std::filesystem::path DefaultDataDir();
std::filesystem::path DefaultMapFile(SchemeKind kind);
std::filesystem::path DefaultDictionary();

// Loads `map_file` (default: DefaultMapFile) or builds a computed table.
EncodingTable LoadSchemeTable(const EncodingScheme& scheme,
                              const std::optional<std::filesystem::path>& map_file = std::nullopt);

// Symbols a model over `table`'s streams always keeps as single pieces.
std::vector<char32_t> RequiredSymbols(const EncodingTable& table);

// UTF-8 lines without terminators; throws IoError.
std::vector<std::string> ReadLines(const std::filesystem::path& path);
std::string CorpusFingerprint(const std::vector<std::string>& lines);

// Normalizes and encodes the corpus and trains the vocabulary. With
// config.cws the lexicon takes round(word_ratio * vocab_size) ids and the
// subword model the rest.
Tokenizer TrainTokenizer(const TokenizerConfig& config, EncodingTable table,
                         const std::vector<std::string>& corpus,
                         std::shared_ptr<const ForwardMaxMatchSegmenter> segmenter = nullptr);

struct BundleManifest {
  int format_version = 1;
  std::string scheme;  // EncodingScheme::Name()
  bool use_index = true;
  std::string algorithm;
  size_t vocab_size = 0;
  size_t subword_vocab_size = 0;
  size_t lexicon_size = 0;
  bool cws = false;
  double word_ratio = 0.0;
  std::string corpus_fingerprint;
  std::string table_fingerprint;
};

struct Bundle {
  Tokenizer tokenizer;
  TokenizerConfig config;
  BundleManifest manifest;
};

// Directory with manifest.json, tokenizer.json, vocab.txt, map.txt (file
// based schemes) and, for CWS, lexicon.txt and segmenter.dict.
void SaveBundle(const std::filesystem::path& dir, const Tokenizer& tokenizer,
                const TokenizerConfig& config, const std::string& corpus_fingerprint);
// Throws LoadError when the vocab, mapping file and manifest disagree.
Bundle LoadBundle(const std::filesystem::path& dir);

}  // namespace subchar

#endif  // SUBCHAR_BUNDLE_H_
