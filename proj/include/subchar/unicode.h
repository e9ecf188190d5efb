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

#ifndef SUBCHAR_UNICODE_H_
#define SUBCHAR_UNICODE_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace subchar {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string Utf8ToUtf32(std::string_view s);
std::string Utf32ToUtf8(std::u32string_view s);
void AppendUtf8(char32_t c, std::string* out);
std::string CharToUtf8(char32_t c);

// CJK unified ideographs (base, extensions A-H) and compatibility ideographs.
bool IsCjk(char32_t c);

bool IsZhuyin(char32_t c);

std::string NormalizeNfc(std::string_view s);

// 64-bit FNV-1a; used for file and table fingerprints.
uint64_t Fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);
std::string ToHex64(uint64_t v);

}  // namespace subchar

#endif  // SUBCHAR_UNICODE_H_
