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

#include "subchar/analysis.h"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "subchar/errors.h"

namespace subchar {
namespace {

// Token counts per non-empty line, in corpus order.
std::vector<size_t> TokenCounts(const Tokenizer& tokenizer,
                                const std::vector<std::string>& corpus, int threads) {
  std::vector<const std::string*> examples;
  for (const auto& l : corpus) {
    if (!l.empty()) examples.push_back(&l);
  }
  std::vector<size_t> counts(examples.size(), 0);
  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(std::max(threads, 1), examples.size()));
  auto work = [&](size_t w) {
    for (size_t i = w; i < examples.size(); i += workers) {
      counts[i] = tokenizer.Encode(*examples[i]).size();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return counts;
}

}  // namespace

size_t VocabBreakdown::total() const {
  size_t t = 0;
  for (size_t c : counts) t += c;
  return t;
}

double VocabBreakdown::fraction(PieceCategory c) const {
  const size_t t = total();
  return t ? static_cast<double>(count(c)) / static_cast<double>(t) : 0.0;
}

VocabBreakdown Composition(const Tokenizer& tokenizer) {
  VocabBreakdown b;
  for (size_t id = 0; id < tokenizer.vocab_size(); ++id) {
    ++b.counts[static_cast<size_t>(tokenizer.CategoryOf(static_cast<int32_t>(id)))];
  }
  return b;
}

CorpusStats ComputeStats(const Tokenizer& tokenizer, const std::vector<std::string>& corpus,
                         const std::string& name, int threads) {
  const std::vector<size_t> counts = TokenCounts(tokenizer, corpus, threads);
  if (counts.empty()) throw ConfigError("corpus has no non-empty lines");
  CorpusStats s;
  s.name = name;
  s.vocab_size = tokenizer.vocab_size();
  s.examples = counts.size();
  for (size_t c : counts) s.total_tokens += c;
  s.avg_tokens_per_example =
      static_cast<double>(s.total_tokens) / static_cast<double>(s.examples);
  s.tokenized_bytes = kIdBytes * s.total_tokens;
  s.vocab_breakdown = Composition(tokenizer);
  return s;
}

double AvgLength(const Tokenizer& tokenizer, const std::vector<std::string>& corpus,
                 int threads) {
  const std::vector<size_t> counts = TokenCounts(tokenizer, corpus, threads);
  if (counts.empty()) throw ConfigError("corpus has no non-empty lines");
  size_t total = 0;
  for (size_t c : counts) total += c;
  return static_cast<double>(total) / static_cast<double>(counts.size());
}

double Compression(const Tokenizer& a, const Tokenizer& b,
                   const std::vector<std::string>& corpus, int threads) {
  size_t ta = 0, tb = 0;
  for (size_t c : TokenCounts(a, corpus, threads)) ta += c;
  for (size_t c : TokenCounts(b, corpus, threads)) tb += c;
  if (tb == 0) throw ConfigError("baseline produced no tokens");
  return static_cast<double>(kIdBytes * ta) / static_cast<double>(kIdBytes * tb);
}

std::vector<SweepRow> VocabSizeSweep(const TokenizerConfig& base, const EncodingTable& table,
                                     const std::vector<std::string>& train,
                                     const std::vector<std::string>& eval,
                                     const std::vector<size_t>& sizes, int threads) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw ConfigError("sweep sizes must be ascending");
  }
  if (base.cws) throw ConfigError("vocab sweeps do not support CWS");
  std::vector<SweepRow> rows;
  for (size_t v : sizes) {
    TokenizerConfig cfg = base;
    cfg.trainer.vocab_size = v;
    cfg.trainer.threads = threads;
    const Tokenizer tok = TrainTokenizer(cfg, table, train);
    rows.push_back({v, AvgLength(tok, eval, threads)});
  }
  return rows;
}

std::string FormatFixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<std::string> StatsCsvHeader(bool with_baseline) {
  std::vector<std::string> h = {"tokenizer",    "vocab_size",
                                "examples",     "total_tokens",
                                "avg_tokens_per_example", "tokenized_bytes"};
  if (with_baseline) h.push_back("relative_size_vs_baseline");
  for (PieceCategory c : kAllCategories) h.push_back("vocab_" + std::string(PieceCategoryName(c)));
  return h;
}

std::vector<std::string> StatsCsvRow(const CorpusStats& s, bool with_baseline) {
  std::vector<std::string> row = {s.name,
                                  std::to_string(s.vocab_size),
                                  std::to_string(s.examples),
                                  std::to_string(s.total_tokens),
                                  FormatFixed(s.avg_tokens_per_example, 4),
                                  std::to_string(s.tokenized_bytes)};
  if (with_baseline) {
    row.push_back(s.relative_size_vs_baseline ? FormatFixed(*s.relative_size_vs_baseline, 6)
                                              : "");
  }
  for (PieceCategory c : kAllCategories) row.push_back(std::to_string(s.vocab_breakdown.count(c)));
  return row;
}

std::string CsvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  return out;
}

}  // namespace subchar
