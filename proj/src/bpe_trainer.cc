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
#include <iostream>
#include <queue>
#include <unordered_set>

#include "subchar/errors.h"
#include "trainer_internal.h"

namespace subchar::internal {
namespace {

uint64_t PairKey(int32_t a, int32_t b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}
int32_t KeyLeft(uint64_t k) { return static_cast<int32_t>(k >> 32); }
int32_t KeyRight(uint64_t k) { return static_cast<int32_t>(k & 0xffffffffu); }

class BpeTrainer {
 public:
  BpeTrainer(const std::vector<std::u32string>& lines, const TrainerConfig& config)
      : config_(config) {
    const auto corpus = DedupeLines(lines);
    const size_t budget = PieceBudget(config);
    for (const auto& [c, n] : SymbolInventory(corpus, config.required_symbols)) {
      Intern(std::u32string(1, c));
    }
    if (strings_.size() > budget) {
      throw ConfigError("vocab_size " + std::to_string(config.vocab_size) +
                        " cannot hold the " + std::to_string(strings_.size()) +
                        " single symbols plus special tokens");
    }
    target_ = budget;
    num_singles_ = strings_.size();
    for (const auto& line : corpus) {
      const int32_t base = static_cast<int32_t>(sym_.size());
      const int32_t n = static_cast<int32_t>(line.text.size());
      for (int32_t i = 0; i < n; ++i) {
        sym_.push_back(ids_.at(std::u32string(1, line.text[i])));
        prev_.push_back(i == 0 ? -1 : base + i - 1);
        next_.push_back(i + 1 < n ? base + i + 1 : -1);
        weight_.push_back(static_cast<int64_t>(line.weight));
        alive_.push_back(true);
      }
    }
    for (int32_t p = 0; p < static_cast<int32_t>(sym_.size()); ++p) {
      if (next_[p] >= 0) Add(p, weight_[p]);
    }
    for (const auto& [key, count] : count_) Push(key);
  }

  SubwordModel Run() {
    while (strings_.size() < target_) {
      uint64_t key = 0;
      if (!PopBest(&key)) break;
      const int32_t l = KeyLeft(key), r = KeyRight(key);
      if (count_[key] < static_cast<int64_t>(config_.bpe_min_pair_freq)) break;
      std::u32string merged = strings_[l] + strings_[r];
      if (merged.size() > config_.max_piece_length ||
          config_.excluded_pieces.count(merged)) {
        blocked_.insert(key);
        continue;
      }
      const int32_t m = Intern(merged);
      merges_.emplace_back(l, r);
      Apply(key, l, r, m);
      if (config_.verbose && merges_.size() % 1000 == 0) {
        std::cerr << "[bpe] merges=" << merges_.size() << " vocab=" << strings_.size()
                  << '\n';
      }
    }
    if (strings_.size() < target_) {
      throw ConfigError("corpus supports at most " +
                        std::to_string(strings_.size() + SubwordModel::kNumSpecials) +
                        " pieces; vocab_size " + std::to_string(config_.vocab_size) +
                        " is unattainable");
    }
    std::vector<std::pair<std::u32string, double>> pieces;
    for (size_t i = 0; i < num_singles_; ++i) pieces.emplace_back(strings_[i], 0.0);
    for (size_t i = num_singles_; i < strings_.size(); ++i) {
      pieces.emplace_back(strings_[i], -static_cast<double>(i - num_singles_ + 1));
    }
    std::vector<std::pair<std::u32string, std::u32string>> merges;
    merges.reserve(merges_.size());
    for (const auto& [l, r] : merges_) merges.emplace_back(strings_[l], strings_[r]);
    return SubwordModel::FromPieces(Algorithm::kBpe, std::move(pieces), std::move(merges));
  }

 private:
  struct HeapItem {
    int64_t count;
    uint64_t key;
  };

  int32_t Intern(const std::u32string& s) {
    const auto [it, inserted] = ids_.emplace(s, static_cast<int32_t>(strings_.size()));
    if (inserted) strings_.push_back(s);
    return it->second;
  }

  void Add(int32_t pos, int64_t w) {
    const uint64_t key = PairKey(sym_[pos], sym_[next_[pos]]);
    count_[key] += w;
    positions_[key].push_back(pos);
    touched_.push_back(key);
  }

  void Remove(int32_t pos, int64_t w) {
    count_[PairKey(sym_[pos], sym_[next_[pos]])] -= w;
  }

  void Push(uint64_t key) {
    const int64_t c = count_[key];
    if (c > 0 && !blocked_.count(key)) heap_.push({c, key});
  }

  // Highest count, then lexicographically smallest (left, right).
  bool Worse(const HeapItem& a, const HeapItem& b) const {
    if (a.count != b.count) return a.count < b.count;
    const auto& al = strings_[KeyLeft(a.key)];
    const auto& bl = strings_[KeyLeft(b.key)];
    if (al != bl) return al > bl;
    return strings_[KeyRight(a.key)] > strings_[KeyRight(b.key)];
  }

  bool PopBest(uint64_t* key) {
    while (!heap_.empty()) {
      const HeapItem top = heap_.top();
      heap_.pop();
      if (blocked_.count(top.key)) continue;
      const int64_t actual = count_[top.key];
      if (actual == top.count) {
        *key = top.key;
        return true;
      }
      if (actual > 0 && actual < top.count) heap_.push({actual, top.key});
    }
    return false;
  }

  void Apply(uint64_t key, int32_t l, int32_t r, int32_t m) {
    std::vector<int32_t> occ = std::move(positions_[key]);
    positions_.erase(key);
    std::sort(occ.begin(), occ.end());
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    touched_.clear();
    for (int32_t p : occ) {
      if (!alive_[p] || sym_[p] != l) continue;
      const int32_t q = next_[p];
      if (q < 0 || sym_[q] != r) continue;
      const int64_t w = weight_[p];
      const int32_t a = prev_[p], b = next_[q];
      Remove(p, w);
      if (a >= 0) Remove(a, w);
      if (b >= 0) Remove(q, w);
      sym_[p] = m;
      alive_[q] = false;
      next_[p] = b;
      if (b >= 0) prev_[b] = p;
      if (a >= 0) Add(a, w);
      if (b >= 0) Add(p, w);
    }
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    for (uint64_t k : touched_) Push(k);
  }

  const TrainerConfig& config_;
  size_t target_ = 0;
  size_t num_singles_ = 0;
  std::vector<std::u32string> strings_;
  std::unordered_map<std::u32string, int32_t> ids_;
  std::vector<int32_t> sym_, prev_, next_;
  std::vector<int64_t> weight_;
  std::vector<bool> alive_;
  std::unordered_map<uint64_t, int64_t> count_;
  std::unordered_map<uint64_t, std::vector<int32_t>> positions_;
  std::unordered_set<uint64_t> blocked_;
  std::vector<uint64_t> touched_;
  std::vector<std::pair<int32_t, int32_t>> merges_;
  struct Cmp {
    const BpeTrainer* self;
    bool operator()(const HeapItem& a, const HeapItem& b) const { return self->Worse(a, b); }
  };
  std::priority_queue<HeapItem, std::vector<HeapItem>, Cmp> heap_{Cmp{this}};
};

}  // namespace

SubwordModel TrainBpe(const std::vector<std::u32string>& lines,
                      const TrainerConfig& config) {
  BpeTrainer trainer(lines, config);
  return trainer.Run();
}

}  // namespace subchar::internal
