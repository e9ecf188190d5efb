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

#ifndef SUBCHAR_SRC_SUFFIX_ARRAY_H_
#define SUBCHAR_SRC_SUFFIX_ARRAY_H_

#include <cstdint>
#include <functional>
#include <vector>

namespace subchar::internal {

// Suffixes of `text` ordered by their first `depth` symbols (at least).
// Symbols are dense non-negative integers; give every separator its own
// value so no common prefix spans one.
std::vector<uint32_t> BuildSuffixArray(const std::vector<int32_t>& text, uint32_t depth);

// lcp[t] = common prefix length of suffixes sa[t-1] and sa[t], capped.
std::vector<uint32_t> CappedLcp(const std::vector<int32_t>& text,
                                const std::vector<uint32_t>& sa, uint32_t cap);

// Calls fn(position, length, frequency) once per distinct substring with
// frequency >= 2 and length <= cap.
void ForEachRepeatedSubstring(
    const std::vector<uint32_t>& sa, const std::vector<uint32_t>& lcp,
    const std::function<void(uint32_t, uint32_t, uint32_t)>& fn);

// Like ForEachRepeatedSubstring, but only right-branching substrings: one call
// per LCP interval, at its full length.
void ForEachRepeatNode(const std::vector<uint32_t>& sa, const std::vector<uint32_t>& lcp,
                       const std::function<void(uint32_t, uint32_t, uint32_t)>& fn);

}  // namespace subchar::internal

#endif  // SUBCHAR_SRC_SUFFIX_ARRAY_H_
