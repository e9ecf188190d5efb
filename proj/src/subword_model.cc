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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>

#include "subchar/errors.h"
#include "subchar/subword.h"
#include "subchar/unicode.h"

namespace subchar {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kUnkPenalty = 10.0;

uint64_t PairKey(int32_t a, int32_t b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kUnigram:
      return "unigram";
    case Algorithm::kBpe:
      return "bpe";
    case Algorithm::kChar:
      return "char";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "unigram") return Algorithm::kUnigram;
  if (name == "bpe") return Algorithm::kBpe;
  if (name == "char") return Algorithm::kChar;
  throw ConfigError("unknown algorithm: " + std::string(name));
}

const std::array<std::string, SubwordModel::kNumSpecials>& SubwordModel::SpecialTokens() {
  static const std::array<std::string, kNumSpecials> kTokens = {
      "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"};
  return kTokens;
}

SubwordModel SubwordModel::FromPieces(
    Algorithm algorithm, std::vector<std::pair<std::u32string, double>> pieces,
    std::vector<std::pair<std::u32string, std::u32string>> merges) {
  SubwordModel m;
  m.algorithm_ = algorithm;
  for (const auto& tok : SpecialTokens()) {
    m.pieces_.push_back(Utf8ToUtf32(tok));
    m.scores_.push_back(0.0);
  }
  for (auto& [p, s] : pieces) {
    if (p.empty()) throw ConfigError("empty piece");
    const std::string u8 = Utf32ToUtf8(p);
    for (const auto& tok : SpecialTokens()) {
      if (u8 == tok) throw ConfigError("piece collides with special token " + u8);
    }
    m.pieces_.push_back(std::move(p));
    m.scores_.push_back(s);
  }
  m.merges_ = std::move(merges);
  try {
    m.BuildIndex();
  } catch (const LoadError& e) {
    throw ConfigError(e.what());
  }
  return m;
}

void SubwordModel::BuildIndex() {
  piece_to_id_.clear();
  single_.clear();
  trie_.clear();
  node_piece_.assign(1, -1);
  merge_rank_.clear();
  max_len_ = 1;
  double min_score = 0.0;
  bool any = false;
  for (int32_t id = kNumSpecials; id < static_cast<int32_t>(pieces_.size()); ++id) {
    const std::u32string& p = pieces_[id];
    if (!piece_to_id_.emplace(p, id).second) {
      throw LoadError("duplicate piece " + Utf32ToUtf8(p));
    }
    if (p.size() == 1) single_.emplace(p[0], id);
    max_len_ = std::max(max_len_, p.size());
    if (!any || scores_[id] < min_score) min_score = scores_[id];
    any = true;
    int32_t node = 0;
    for (char32_t c : p) {
      const uint64_t key = (static_cast<uint64_t>(node) << 21) | c;
      auto it = trie_.find(key);
      if (it == trie_.end()) {
        it = trie_.emplace(key, static_cast<int32_t>(node_piece_.size())).first;
        node_piece_.push_back(-1);
      }
      node = it->second;
    }
    node_piece_[node] = id;
  }
  unk_score_ = min_score - kUnkPenalty;
  for (size_t r = 0; r < merges_.size(); ++r) {
    const auto& [l, rt] = merges_[r];
    const auto li = piece_to_id_.find(l);
    const auto ri = piece_to_id_.find(rt);
    const auto mi = piece_to_id_.find(l + rt);
    if (li == piece_to_id_.end() || ri == piece_to_id_.end() ||
        mi == piece_to_id_.end()) {
      throw LoadError("merge references unknown piece: " + Utf32ToUtf8(l) + " " +
                      Utf32ToUtf8(rt));
    }
    merge_rank_.emplace(PairKey(li->second, ri->second),
                        std::make_pair(static_cast<int32_t>(r), mi->second));
  }
}

std::optional<int32_t> SubwordModel::PieceToId(std::u32string_view piece) const {
  if (const auto it = piece_to_id_.find(std::u32string(piece)); it != piece_to_id_.end()) {
    return it->second;
  }
  for (int32_t id = 0; id < kNumSpecials; ++id) {
    if (pieces_[id] == piece) return id;
  }
  return std::nullopt;
}

int32_t SubwordModel::Child(int32_t node, char32_t c) const {
  const auto it = trie_.find((static_cast<uint64_t>(node) << 21) | c);
  return it == trie_.end() ? -1 : it->second;
}

std::vector<Span> SubwordModel::Segment(std::u32string_view symbols) const {
  switch (algorithm_) {
    case Algorithm::kUnigram:
      return SegmentUnigram(symbols, nullptr);
    case Algorithm::kBpe:
      return SegmentBpe(symbols);
    case Algorithm::kChar:
      return SegmentChar(symbols);
  }
  return {};
}

double SubwordModel::SegmentScore(std::u32string_view symbols) const {
  if (algorithm_ == Algorithm::kUnigram) {
    double score = 0.0;
    SegmentUnigram(symbols, &score);
    return score;
  }
  double total = 0.0;
  for (const Span& sp : Segment(symbols)) {
    total += sp.id == kUnkId ? unk_score_ : scores_[sp.id];
  }
  return total;
}

std::vector<Span> SubwordModel::SegmentUnigram(std::u32string_view s,
                                               double* score) const {
  const size_t n = s.size();
  std::vector<double> best(n + 1, kNegInf);
  std::vector<uint32_t> back_len(n + 1, 0);
  std::vector<int32_t> back_id(n + 1, kUnkId);
  best[0] = 0.0;
  for (size_t i = 0; i < n; ++i) {
    bool has_single = false;
    int32_t node = 0;
    for (size_t j = i; j < n && j - i < max_len_; ++j) {
      node = Child(node, s[j]);
      if (node < 0) break;
      const int32_t pid = node_piece_[node];
      if (pid < 0) continue;
      if (j == i) has_single = true;
      const double cand = best[i] + scores_[pid];
      if (cand > best[j + 1]) {
        best[j + 1] = cand;
        back_len[j + 1] = static_cast<uint32_t>(j + 1 - i);
        back_id[j + 1] = pid;
      }
    }
    if (!has_single) {
      const double cand = best[i] + unk_score_;
      if (cand > best[i + 1]) {
        best[i + 1] = cand;
        back_len[i + 1] = 1;
        back_id[i + 1] = kUnkId;
      }
    }
  }
  if (score) *score = best[n];
  std::vector<Span> out;
  for (size_t j = n; j > 0; j -= back_len[j]) {
    out.push_back(Span{static_cast<uint32_t>(j - back_len[j]), back_len[j], back_id[j]});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Span> SubwordModel::SegmentChar(std::u32string_view s) const {
  std::vector<Span> out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    const auto it = single_.find(s[i]);
    out.push_back(Span{static_cast<uint32_t>(i), 1,
                       it == single_.end() ? kUnkId : it->second});
  }
  return out;
}

std::vector<Span> SubwordModel::SegmentBpe(std::u32string_view s) const {
  const int32_t n = static_cast<int32_t>(s.size());
  std::vector<int32_t> ids(n), prev(n), next(n);
  std::vector<uint32_t> len(n, 1);
  std::vector<bool> alive(n, true);
  for (int32_t i = 0; i < n; ++i) {
    const auto it = single_.find(s[i]);
    ids[i] = it == single_.end() ? kUnkId : it->second;
    prev[i] = i - 1;
    next[i] = i + 1 < n ? i + 1 : -1;
  }
  using Item = std::pair<int32_t, int32_t>;  // (rank, position)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  auto push = [&](int32_t p) {
    if (p < 0 || next[p] < 0) return;
    const auto it = merge_rank_.find(PairKey(ids[p], ids[next[p]]));
    if (it != merge_rank_.end()) heap.emplace(it->second.first, p);
  };
  for (int32_t i = 0; i + 1 < n; ++i) push(i);
  while (!heap.empty()) {
    const auto [rank, p] = heap.top();
    heap.pop();
    if (!alive[p] || next[p] < 0) continue;
    const auto it = merge_rank_.find(PairKey(ids[p], ids[next[p]]));
    if (it == merge_rank_.end() || it->second.first != rank) continue;
    const int32_t q = next[p];
    ids[p] = it->second.second;
    len[p] += len[q];
    alive[q] = false;
    next[p] = next[q];
    if (next[q] >= 0) prev[next[q]] = p;
    push(prev[p]);
    push(p);
  }
  std::vector<Span> out;
  uint32_t begin = 0;
  for (int32_t i = n > 0 ? 0 : -1; i >= 0; i = next[i]) {
    out.push_back(Span{begin, len[i], ids[i]});
    begin += len[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vocab file

std::string EscapePiece(std::u32string_view piece, bool escape_space) {
  std::string out;
  for (size_t i = 0; i < piece.size(); ++i) {
    const char32_t c = piece[i];
    switch (c) {
      case U'\\':
        out += "\\\\";
        break;
      case U'\t':
        out += "\\t";
        break;
      case U'\n':
        out += "\\n";
        break;
      case U'\r':
        out += "\\r";
        break;
      case U' ':
        out += escape_space ? "\\s" : " ";
        break;
      case U'%':
        out += i == 0 ? "\\%" : "%";
        break;
      default:
        AppendUtf8(c, &out);
    }
  }
  return out;
}

std::u32string UnescapePiece(std::string_view text) {
  const std::u32string in = Utf8ToUtf32(text);
  std::u32string out;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] != U'\\' || i + 1 == in.size()) {
      out.push_back(in[i]);
      continue;
    }
    const char32_t e = in[++i];
    switch (e) {
      case U't':
        out.push_back(U'\t');
        break;
      case U'n':
        out.push_back(U'\n');
        break;
      case U'r':
        out.push_back(U'\r');
        break;
      case U's':
        out.push_back(U' ');
        break;
      default:
        out.push_back(e);
    }
  }
  return out;
}

void SubwordModel::Save(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& header) const {
  out << "%%subchar-vocab 1\n";
  out << "%%algorithm " << AlgorithmName(algorithm_) << '\n';
  for (const auto& [k, v] : header) out << "%%" << k << ' ' << v << '\n';
  out << "%%pieces " << pieces_.size() << '\n';
  for (size_t id = 0; id < pieces_.size(); ++id) {
    out << EscapePiece(pieces_[id]) << '\t' << FormatDouble(scores_[id]) << '\n';
  }
  if (algorithm_ == Algorithm::kBpe) {
    out << "%%merges " << merges_.size() << '\n';
    for (const auto& [l, r] : merges_) {
      out << EscapePiece(l) << '\t' << EscapePiece(r) << '\n';
    }
  }
  if (!out) throw IoError("failed to write vocab");
}

SubwordModel SubwordModel::Load(std::istream& in, const std::string& source,
                                std::map<std::string, std::string>* header) {
  SubwordModel m;
  std::string line;
  size_t lineno = 0;
  bool magic = false, have_algorithm = false, in_merges = false;
  size_t expected = 0;
  std::vector<std::pair<std::u32string, double>> pieces;
  std::vector<std::pair<std::u32string, std::u32string>> merges;
  auto split_tab = [&](const std::string& l) {
    const size_t tab = l.find('\t');
    if (tab == std::string::npos || l.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source, lineno, "expected two TAB-separated fields");
    }
    return std::make_pair(l.substr(0, tab), l.substr(tab + 1));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("%%", 0) == 0) {
      const size_t sp = line.find(' ');
      const std::string key = line.substr(2, sp == std::string::npos ? std::string::npos : sp - 2);
      const std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
      if (key == "subchar-vocab") {
        if (value != "1") throw ParseError(source, lineno, "unsupported vocab version");
        magic = true;
      } else if (key == "algorithm") {
        m.algorithm_ = ParseAlgorithm(value);
        have_algorithm = true;
      } else if (key == "pieces") {
        expected = std::stoul(value);
      } else if (key == "merges") {
        in_merges = true;
      } else if (header) {
        (*header)[key] = value;
      }
      continue;
    }
    if (!magic) throw ParseError(source, lineno, "missing %%subchar-vocab header");
    const auto [a, b] = split_tab(line);
    if (in_merges) {
      merges.emplace_back(UnescapePiece(a), UnescapePiece(b));
      continue;
    }
    double score = 0.0;
    const auto res = std::from_chars(b.data(), b.data() + b.size(), score);
    if (res.ec != std::errc() || res.ptr != b.data() + b.size()) {
      throw ParseError(source, lineno, "invalid score '" + b + "'");
    }
    pieces.emplace_back(UnescapePiece(a), score);
  }
  if (!magic || !have_algorithm) throw LoadError(source + ": not a subchar vocab file");
  if (expected != pieces.size()) {
    throw LoadError(source + ": expected " + std::to_string(expected) + " pieces, found " +
                    std::to_string(pieces.size()));
  }
  if (pieces.size() < static_cast<size_t>(kNumSpecials)) {
    throw LoadError(source + ": missing special tokens");
  }
  for (int32_t id = 0; id < kNumSpecials; ++id) {
    if (Utf32ToUtf8(pieces[id].first) != SpecialTokens()[id]) {
      throw LoadError(source + ": special token " + std::to_string(id) + " must be " +
                      SpecialTokens()[id]);
    }
  }
  for (auto& [p, s] : pieces) {
    m.pieces_.push_back(std::move(p));
    m.scores_.push_back(s);
  }
  m.merges_ = std::move(merges);
  m.BuildIndex();
  return m;
}

}  // namespace subchar
