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

#ifndef SUBCHAR_NOISE_H_
#define SUBCHAR_NOISE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "subchar/charmap.h"

namespace subchar {

struct NoiseConfig {
  double ratio = 0.0;  // fraction of CJK characters to sample
  uint64_t seed = 0;
};

struct Replacement {
  size_t position = 0;  // codepoint index
  char32_t original = 0;
  char32_t substitute = 0;

  bool operator==(const Replacement&) const = default;
};

struct NoiseReport {
  double ratio = 0.0;
  uint64_t seed = 0;
  size_t n_cjk = 0;
  // Ascending codepoint indices.
  std::vector<size_t> sampled_positions;
  std::vector<Replacement> replaced;
  std::vector<size_t> skipped_no_homophone;

  bool operator==(const NoiseReport&) const = default;
};

struct NoisyText {
  std::string text;
  NoiseReport report;
};

// round-half-up(ratio * n).
size_t SampleCount(double ratio, size_t n);

// Samples SampleCount(ratio, #CJK) CJK positions uniformly without
// replacement and swaps each for a uniformly drawn homophone. The table
// must use a pronunciation scheme.
NoisyText InjectNoise(const EncodingTable& table, const NoiseConfig& config,
                      std::string_view text);

struct NoiseSweepResult {
  double ratio = 0.0;
  std::vector<std::string> lines;
  std::vector<NoiseReport> reports;
};

// One noisy corpus per ratio. Line i uses seed DeriveSeed(base_seed, i) at
// every ratio, so larger ratios sample supersets of smaller ones.
std::vector<NoiseSweepResult> NoiseSweep(const EncodingTable& table, uint64_t base_seed,
                                         const std::vector<std::string>& lines,
                                         const std::vector<double>& ratios, int threads = 1);

// One JSON object on a single line.
std::string NoiseReportJson(const NoiseReport& report, size_t line_index);

}  // namespace subchar

#endif  // SUBCHAR_NOISE_H_
