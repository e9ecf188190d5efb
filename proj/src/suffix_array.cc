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

#include "suffix_array.h"

#include <algorithm>

namespace subchar::internal {

std::vector<uint32_t> BuildSuffixArray(const std::vector<int32_t>& text, uint32_t depth) {
  const uint32_t n = static_cast<uint32_t>(text.size());
  std::vector<uint32_t> sa(n), tmp(n);
  if (n == 0) return sa;
  std::vector<uint32_t> rank(n), next_rank(n);
  uint32_t classes = 0;
  for (uint32_t i = 0; i < n; ++i) {
    rank[i] = static_cast<uint32_t>(text[i]);
    classes = std::max(classes, rank[i] + 1);
  }
  std::vector<uint32_t> count;
  // Counting sort of `in` by key(i) into `out`; stable.
  auto radix = [&](const std::vector<uint32_t>& in, std::vector<uint32_t>& out,
                   uint32_t buckets, auto key) {
    count.assign(buckets + 1, 0);
    for (uint32_t i : in) ++count[key(i) + 1];
    for (uint32_t b = 1; b <= buckets; ++b) count[b] += count[b - 1];
    for (uint32_t i : in) out[count[key(i)]++] = i;
  };
  for (uint32_t i = 0; i < n; ++i) tmp[i] = i;
  radix(tmp, sa, classes, [&](uint32_t i) { return rank[i]; });
  // Re-rank by the first symbol.
  next_rank[sa[0]] = 0;
  for (uint32_t t = 1; t < n; ++t) {
    next_rank[sa[t]] = next_rank[sa[t - 1]] + (rank[sa[t]] != rank[sa[t - 1]]);
  }
  rank.swap(next_rank);
  classes = rank[sa[n - 1]] + 1;

  for (uint32_t k = 1; k < depth && classes < n; k *= 2) {
    auto second = [&](uint32_t i) { return i + k < n ? rank[i + k] + 1 : 0u; };
    for (uint32_t t = 0; t < n; ++t) tmp[t] = t;
    std::vector<uint32_t> by_second(n);
    radix(tmp, by_second, classes + 1, second);
    radix(by_second, sa, classes, [&](uint32_t i) { return rank[i]; });
    next_rank[sa[0]] = 0;
    for (uint32_t t = 1; t < n; ++t) {
      const uint32_t a = sa[t - 1], b = sa[t];
      const bool differs = rank[a] != rank[b] || second(a) != second(b);
      next_rank[b] = next_rank[a] + differs;
    }
    rank.swap(next_rank);
    classes = rank[sa[n - 1]] + 1;
  }
  return sa;
}

std::vector<uint32_t> CappedLcp(const std::vector<int32_t>& text,
                                const std::vector<uint32_t>& sa, uint32_t cap) {
  const size_t n = sa.size();
  std::vector<uint32_t> lcp(n, 0);
  for (size_t t = 1; t < n; ++t) {
    const uint32_t a = sa[t - 1], b = sa[t];
    uint32_t l = 0;
    while (l < cap && a + l < n && b + l < n && text[a + l] == text[b + l]) ++l;
    lcp[t] = l;
  }
  return lcp;
}

void ForEachRepeatedSubstring(
    const std::vector<uint32_t>& sa, const std::vector<uint32_t>& lcp,
    const std::function<void(uint32_t, uint32_t, uint32_t)>& fn) {
  struct Interval {
    uint32_t height;
    uint32_t lb;
  };
  const uint32_t n = static_cast<uint32_t>(sa.size());
  std::vector<Interval> stack = {{0, 0}};
  for (uint32_t t = 1; t <= n; ++t) {
    const uint32_t cur = t < n ? lcp[t] : 0;
    uint32_t lb = t - 1;
    while (stack.back().height > cur) {
      const Interval top = stack.back();
      stack.pop_back();
      lb = top.lb;
      const uint32_t parent = std::max(cur, stack.back().height);
      const uint32_t freq = t - top.lb;
      for (uint32_t len = parent + 1; len <= top.height; ++len) fn(sa[top.lb], len, freq);
    }
    if (stack.back().height < cur) stack.push_back({cur, lb});
  }
}

void ForEachRepeatNode(const std::vector<uint32_t>& sa, const std::vector<uint32_t>& lcp,
                       const std::function<void(uint32_t, uint32_t, uint32_t)>& fn) {
  struct Interval {
    uint32_t height;
    uint32_t lb;
  };
  const uint32_t n = static_cast<uint32_t>(sa.size());
  std::vector<Interval> stack = {{0, 0}};
  for (uint32_t t = 1; t <= n; ++t) {
    const uint32_t cur = t < n ? lcp[t] : 0;
    uint32_t lb = t - 1;
    while (stack.back().height > cur) {
      const Interval top = stack.back();
      stack.pop_back();
      lb = top.lb;
      fn(sa[top.lb], top.height, t - top.lb);
    }
    if (stack.back().height < cur) stack.push_back({cur, lb});
  }
}

}  // namespace subchar::internal
