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
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <queue>
#include <thread>

#include <boost/math/special_functions/digamma.hpp>

#include "subchar/errors.h"
#include "subchar/unicode.h"
#include "suffix_array.h"
#include "trainer_internal.h"

namespace subchar::internal {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kCountFloor = 0.01;
constexpr double kMinExpectedCount = 0.5;

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

struct Seed {
  std::u32string piece;
  uint64_t freq;
};

// Most frequent substrings of 2..max_len symbols ranked by freq * len.
std::vector<Seed> SeedSubstrings(const std::vector<std::u32string>& lines,
                                 const std::vector<std::pair<char32_t, uint64_t>>& inventory,
                                 const TrainerConfig& config, size_t quota) {
  std::unordered_map<char32_t, int32_t> dense;
  std::vector<char32_t> symbol_of;
  for (const auto& [c, n] : inventory) {
    dense.emplace(c, static_cast<int32_t>(symbol_of.size()));
    symbol_of.push_back(c);
  }
  std::vector<int32_t> text;
  size_t total = 0;
  for (const auto& l : lines) total += l.size() + 1;
  text.reserve(total);
  int32_t separator = static_cast<int32_t>(symbol_of.size());
  for (const auto& l : lines) {
    if (l.empty()) continue;
    for (char32_t c : l) text.push_back(dense.at(c));
    text.push_back(separator++);
  }
  const uint32_t max_len = static_cast<uint32_t>(config.max_piece_length);
  const auto sa = BuildSuffixArray(text, max_len);
  const auto lcp = CappedLcp(text, sa, max_len);

  struct Cand {
    uint64_t score;
    uint32_t pos, len, freq;
  };
  // True if a ranks ahead of b: higher score, then lexicographically smaller.
  auto better = [&](const Cand& a, const Cand& b) {
    if (a.score != b.score) return a.score > b.score;
    const uint32_t m = std::min(a.len, b.len);
    for (uint32_t k = 0; k < m; ++k) {
      if (text[a.pos + k] != text[b.pos + k]) return text[a.pos + k] < text[b.pos + k];
    }
    return a.len < b.len;
  };
  std::priority_queue<Cand, std::vector<Cand>, decltype(better)> heap(better);
  auto piece_at = [&](uint32_t pos, uint32_t len) {
    std::u32string s(len, 0);
    for (uint32_t k = 0; k < len; ++k) s[k] = symbol_of[text[pos + k]];
    return s;
  };
  if (quota > 0) {
    ForEachRepeatNode(sa, lcp, [&](uint32_t pos, uint32_t len, uint32_t freq) {
      if (len < 2) return;
      const Cand c{static_cast<uint64_t>(freq) * len, pos, len, freq};
      if (heap.size() >= quota && !better(c, heap.top())) return;
      if (!config.excluded_pieces.empty() &&
          config.excluded_pieces.count(piece_at(pos, len))) {
        return;
      }
      heap.push(c);
      if (heap.size() > quota) heap.pop();
    });
  }
  std::vector<Seed> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back({piece_at(heap.top().pos, heap.top().len), heap.top().freq});
    heap.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

class UnigramTrainer {
 public:
  UnigramTrainer(const std::vector<std::u32string>& lines, const TrainerConfig& config)
      : config_(config), corpus_(DedupeLines(lines)) {
    const size_t budget = PieceBudget(config);
    const auto inventory = SymbolInventory(corpus_, config.required_symbols);
    if (inventory.size() > budget) {
      throw ConfigError("vocab_size " + std::to_string(config.vocab_size) +
                        " cannot hold the " + std::to_string(inventory.size()) +
                        " single symbols plus special tokens");
    }
    target_ = budget;
    stop_size_ = target_ + target_ / 10;
    const size_t seed_size = config.seed_size;
    const size_t quota = seed_size > inventory.size() ? seed_size - inventory.size() : 0;
    const auto seeds = SeedSubstrings(lines, inventory, config, quota);
    if (inventory.size() + seeds.size() < target_) {
      throw ConfigError("corpus supports at most " +
                        std::to_string(inventory.size() + seeds.size() +
                                       SubwordModel::kNumSpecials) +
                        " pieces; vocab_size " + std::to_string(config.vocab_size) +
                        " is unattainable");
    }
    for (const auto& [c, n] : inventory) {
      pieces_.emplace_back(1, c);
      scores_.push_back(std::log(std::max(static_cast<double>(n), kCountFloor)));
    }
    num_singles_ = pieces_.size();
    for (const auto& s : seeds) {
      pieces_.push_back(s.piece);
      scores_.push_back(std::log(static_cast<double>(s.freq)));
    }
    Normalize();
    Log("seed vocabulary: " + std::to_string(pieces_.size()) + " pieces");
  }

  SubwordModel Run() {
    while (true) {
      RunEm(/*allow_drop=*/true);
      if (pieces_.size() <= stop_size_) break;
      Prune();
    }
    KeepBest();
    RunEm(/*allow_drop=*/false);
    Normalize();

    std::vector<size_t> order(pieces_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (scores_[a] != scores_[b]) return scores_[a] > scores_[b];
      return pieces_[a] < pieces_[b];
    });
    std::vector<std::pair<std::u32string, double>> out;
    out.reserve(order.size());
    for (size_t i : order) out.emplace_back(pieces_[i], scores_[i]);
    return SubwordModel::FromPieces(Algorithm::kUnigram, std::move(out));
  }

 private:
  void Log(const std::string& msg) const {
    if (config_.verbose) std::cerr << "[unigram] " << msg << '\n';
  }

  // Shift scores so that the pieces' probabilities sum to one.
  void Normalize() {
    double z = kNegInf;
    for (double s : scores_) z = LogAdd(z, s);
    for (double& s : scores_) s -= z;
  }

  // The corpus is cut into a fixed number of chunks summed in chunk order,
  // so results do not depend on the thread count.
  template <typename Fn>
  std::vector<double> ParallelAccumulate(Fn&& fn, double* objective, size_t width = 0) const {
    if (width == 0) width = pieces_.size();
    constexpr size_t kChunks = 16;
    const size_t chunks = std::max<size_t>(1, std::min(kChunks, corpus_.size()));
    const size_t per_chunk = (corpus_.size() + chunks - 1) / chunks;
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(width, 0.0));
    std::vector<double> obj(chunks, 0.0);
    auto run_chunk = [&](size_t c) {
      const size_t lo = c * per_chunk, hi = std::min(corpus_.size(), lo + per_chunk);
      for (size_t i = lo; i < hi; ++i) fn(corpus_[i], &partial[c], &obj[c]);
    };
    const size_t threads = std::max<size_t>(1, std::min<size_t>(config_.threads, chunks));
    if (threads == 1) {
      for (size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
      std::atomic<size_t> next{0};
      std::vector<std::thread> pool;
      for (size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (size_t c = next++; c < chunks; c = next++) run_chunk(c);
        });
      }
      for (auto& th : pool) th.join();
    }
    for (size_t c = 1; c < chunks; ++c) {
      for (size_t p = 0; p < width; ++p) partial[0][p] += partial[c][p];
      obj[0] += obj[c];
    }
    if (objective) *objective = obj[0];
    return std::move(partial[0]);
  }

  std::vector<double> ExpectedCounts(const PieceTrie& trie, double* objective) const {
    return ParallelAccumulate(
        [&](const WeightedLine& line, std::vector<double>* counts, double* obj) {
          struct Edge {
            uint32_t begin, end;
            int32_t piece;
          };
          const std::u32string& s = line.text;
          const size_t n = s.size();
          std::vector<Edge> edges;
          edges.reserve(n * 4);
          for (size_t i = 0; i < n; ++i) {
            trie.ForEachPrefix(s, i, [&](size_t len, int32_t p) {
              if (len <= config_.max_piece_length) {
                edges.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(i + len), p});
              }
            });
          }
          std::vector<double> alpha(n + 1, kNegInf), beta(n + 1, kNegInf);
          alpha[0] = 0.0;
          for (const Edge& e : edges) {
            alpha[e.end] = LogAdd(alpha[e.end], alpha[e.begin] + scores_[e.piece]);
          }
          beta[n] = 0.0;
          for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
            beta[it->begin] = LogAdd(beta[it->begin], scores_[it->piece] + beta[it->end]);
          }
          const double z = alpha[n];
          const double w = static_cast<double>(line.weight);
          for (const Edge& e : edges) {
            (*counts)[e.piece] +=
                w * std::exp(alpha[e.begin] + scores_[e.piece] + beta[e.end] - z);
          }
          *obj += w * z;
        },
        objective);
  }

  // Best split of s under the current scores, optionally without one piece.
  std::vector<int32_t> Viterbi(const PieceTrie& trie, std::u32string_view s,
                               int32_t excluded = -1) const {
    const size_t n = s.size();
    std::vector<double> best(n + 1, kNegInf);
    std::vector<int32_t> back(n + 1, -1);
    std::vector<uint32_t> back_len(n + 1, 0);
    best[0] = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (best[i] == kNegInf) continue;
      trie.ForEachPrefix(s, i, [&](size_t len, int32_t p) {
        if (p == excluded || len > config_.max_piece_length) return;
        const double cand = best[i] + scores_[p];
        if (cand > best[i + len]) {
          best[i + len] = cand;
          back[i + len] = p;
          back_len[i + len] = static_cast<uint32_t>(len);
        }
      });
    }
    std::vector<int32_t> out;
    for (size_t j = n; j > 0 && back[j] >= 0; j -= back_len[j]) out.push_back(back[j]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  void RunEm(bool allow_drop) {
    for (int iter = 0; iter < config_.em_iterations; ++iter) {
      const PieceTrie trie(pieces_);
      double objective = 0.0;
      std::vector<double> counts = ExpectedCounts(trie, &objective);
      if (allow_drop && pieces_.size() > target_) {
        std::vector<size_t> weak;
        for (size_t p = num_singles_; p < pieces_.size(); ++p) {
          if (counts[p] < kMinExpectedCount) weak.push_back(p);
        }
        std::sort(weak.begin(), weak.end(), [&](size_t a, size_t b) {
          if (counts[a] != counts[b]) return counts[a] < counts[b];
          return pieces_[a] > pieces_[b];
        });
        weak.resize(std::min(weak.size(), pieces_.size() - target_));
        std::vector<bool> drop(pieces_.size(), false);
        for (size_t p : weak) drop[p] = true;
        Compact(drop, &counts);
      }
      double total = 0.0;
      for (double& c : counts) {
        c = std::max(c, kCountFloor);
        total += c;
      }
      // Variational Bayes M-step (digamma), as in SentencePiece; favors
      // pruning rarely used pieces.
      const double dg_total = boost::math::digamma(total);
      for (size_t p = 0; p < pieces_.size(); ++p) {
        scores_[p] = boost::math::digamma(counts[p]) - dg_total;
      }
      Log("EM pieces=" + std::to_string(pieces_.size()) +
          " objective=" + std::to_string(objective));
    }
  }

  void Compact(const std::vector<bool>& drop, std::vector<double>* counts) {
    size_t w = 0;
    for (size_t p = 0; p < pieces_.size(); ++p) {
      if (drop[p]) continue;
      if (w != p) pieces_[w] = std::move(pieces_[p]);
      scores_[w] = scores_[p];
      if (counts) (*counts)[w] = (*counts)[p];
      ++w;
    }
    pieces_.resize(w);
    scores_.resize(w);
    if (counts) counts->resize(w);
  }

  void Prune() {
    const PieceTrie trie(pieces_);
    const size_t n = pieces_.size();
    // [0, n): Viterbi frequency. [n, 2n): weight of lines using the piece.
    std::vector<double> acc = ParallelAccumulate(
        [&](const WeightedLine& line, std::vector<double>* counts, double*) {
          const double w = static_cast<double>(line.weight);
          std::vector<int32_t> used = Viterbi(trie, line.text);
          for (int32_t p : used) (*counts)[p] += w;
          std::sort(used.begin(), used.end());
          used.erase(std::unique(used.begin(), used.end()), used.end());
          for (int32_t p : used) (*counts)[n + p] += w;
        },
        nullptr, 2 * n);
    const std::vector<double> freq(acc.begin(), acc.begin() + n);
    double lines_total = 0.0;
    for (const auto& l : corpus_) lines_total += static_cast<double>(l.weight);
    const double sum = std::accumulate(freq.begin(), freq.end(), 0.0);
    std::vector<double> loss(pieces_.size(), 0.0);
    for (size_t p = num_singles_; p < pieces_.size(); ++p) {
      const double f = freq[p];
      if (f == 0.0) continue;
      const auto alt = Viterbi(trie, pieces_[p], static_cast<int32_t>(p));
      const double logprob = std::log(f) - std::log(sum);
      const double logsum_alt =
          std::log(sum + f * (static_cast<double>(alt.size()) - 1.0));
      double logprob_alt = 0.0;
      for (int32_t a : alt) logprob_alt += std::log(freq[a] + f) - logsum_alt;
      loss[p] = acc[n + p] / lines_total * (logprob - logprob_alt);
    }
    std::vector<size_t> multi(pieces_.size() - num_singles_);
    std::iota(multi.begin(), multi.end(), num_singles_);
    std::sort(multi.begin(), multi.end(), [&](size_t a, size_t b) {
      if (loss[a] != loss[b]) return loss[a] < loss[b];
      return pieces_[a] > pieces_[b];
    });
    const size_t shrunk =
        static_cast<size_t>(static_cast<double>(pieces_.size()) * (1.0 - config_.prune_fraction));
    const size_t keep = std::max(stop_size_, shrunk);
    const size_t n_drop = std::min(multi.size(), pieces_.size() - keep);
    std::vector<bool> drop(pieces_.size(), false);
    for (size_t k = 0; k < n_drop; ++k) drop[multi[k]] = true;
    Compact(drop, nullptr);
    Log("pruned to " + std::to_string(pieces_.size()) + " pieces");
  }

  // Singles plus the highest scoring pieces, target_ in all.
  void KeepBest() {
    if (pieces_.size() <= target_) return;
    std::vector<size_t> multi(pieces_.size() - num_singles_);
    std::iota(multi.begin(), multi.end(), num_singles_);
    std::sort(multi.begin(), multi.end(), [&](size_t a, size_t b) {
      if (scores_[a] != scores_[b]) return scores_[a] < scores_[b];
      return pieces_[a] > pieces_[b];
    });
    std::vector<bool> drop(pieces_.size(), false);
    for (size_t k = 0; k < pieces_.size() - target_; ++k) drop[multi[k]] = true;
    Compact(drop, nullptr);
  }

  const TrainerConfig& config_;
  std::vector<WeightedLine> corpus_;
  size_t target_ = 0;
  size_t stop_size_ = 0;
  size_t num_singles_ = 0;
  std::vector<std::u32string> pieces_;
  std::vector<double> scores_;
};

}  // namespace

SubwordModel TrainUnigram(const std::vector<std::u32string>& lines,
                          const TrainerConfig& config) {
  UnigramTrainer trainer(lines, config);
  return trainer.Run();
}

}  // namespace subchar::internal
