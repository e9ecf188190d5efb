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

#include "subchar/noise.h"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>
#include <thread>

#include "subchar/errors.h"
#include "subchar/random.h"
#include "subchar/unicode.h"

namespace subchar {

size_t SampleCount(double ratio, size_t n) {
  // The epsilon keeps exact halves such as 0.075 * 1000 from rounding down
  // through binary representation error.
  return static_cast<size_t>(std::floor(ratio * static_cast<double>(n) + 0.5 + 1e-9));
}

NoisyText InjectNoise(const EncodingTable& table, const NoiseConfig& config,
                      std::string_view text) {
  if (!(config.ratio >= 0.0 && config.ratio <= 1.0)) {
    throw ConfigError("noise ratio must be in [0, 1]");
  }
  if (!IsPronunciationScheme(table.scheme().kind)) {
    throw ConfigError("homophone noise needs a pronunciation table, got " +
                      table.scheme().Name());
  }
  std::u32string u = Utf8ToUtf32(text);
  NoisyText out;
  NoiseReport& report = out.report;
  report.ratio = config.ratio;
  report.seed = config.seed;

  std::vector<size_t> cjk;
  for (size_t i = 0; i < u.size(); ++i) {
    if (IsCjk(u[i])) cjk.push_back(i);
  }
  report.n_cjk = cjk.size();
  const size_t k = SampleCount(config.ratio, cjk.size());

  Rng sampler(config.seed);
  for (size_t i = 0; i < k; ++i) {
    std::swap(cjk[i], cjk[UniformInt(sampler, i, cjk.size() - 1)]);
  }
  report.sampled_positions.assign(cjk.begin(), cjk.begin() + k);
  std::sort(report.sampled_positions.begin(), report.sampled_positions.end());

  Rng chooser(DeriveSeed(config.seed, 1));
  for (size_t pos : report.sampled_positions) {
    const std::vector<char32_t> homophones = table.HomophonesOf(u[pos]);
    if (homophones.empty()) {
      report.skipped_no_homophone.push_back(pos);
      continue;
    }
    const char32_t sub = homophones[UniformInt(chooser, 0, homophones.size() - 1)];
    report.replaced.push_back({pos, u[pos], sub});
    u[pos] = sub;
  }
  out.text = Utf32ToUtf8(u);
  return out;
}

std::vector<NoiseSweepResult> NoiseSweep(const EncodingTable& table, uint64_t base_seed,
                                         const std::vector<std::string>& lines,
                                         const std::vector<double>& ratios, int threads) {
  std::vector<NoiseSweepResult> out;
  for (double r : ratios) {
    NoiseSweepResult res;
    res.ratio = r;
    res.lines.resize(lines.size());
    res.reports.resize(lines.size());
    const size_t workers =
        std::max<size_t>(1, std::min<size_t>(std::max(threads, 1), lines.size()));
    auto work = [&](size_t w) {
      for (size_t i = w; i < lines.size(); i += workers) {
        NoisyText nt = InjectNoise(table, {r, DeriveSeed(base_seed, i)}, lines[i]);
        res.lines[i] = std::move(nt.text);
        res.reports[i] = std::move(nt.report);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::string NoiseReportJson(const NoiseReport& report, size_t line_index) {
  nlohmann::ordered_json replaced = nlohmann::ordered_json::array();
  for (const auto& r : report.replaced) {
    replaced.push_back({r.position, CharToUtf8(r.original), CharToUtf8(r.substitute)});
  }
  nlohmann::ordered_json j = {
      {"line", line_index},
      {"ratio", report.ratio},
      {"seed", report.seed},
      {"n_cjk", report.n_cjk},
      {"sampled", report.sampled_positions},
      {"replaced", replaced},
      {"skipped_no_homophone", report.skipped_no_homophone},
  };
  return j.dump();
}

}  // namespace subchar
