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

#ifndef SUBCHAR_RANDOM_H_
#define SUBCHAR_RANDOM_H_

#include <boost/random/uniform_int_distribution.hpp>
#include <cstdint>
#include <random>

namespace subchar {

// mt19937_64 is fully specified by the standard and boost's distribution has
// a fixed algorithm, so seeded draws are identical on every platform.
using Rng = std::mt19937_64;

inline uint64_t UniformInt(Rng& rng, uint64_t lo, uint64_t hi) {
  return boost::random::uniform_int_distribution<uint64_t>(lo, hi)(rng);
}

// splitmix64 finalizer over (seed, stream); independent child seeds.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace subchar

#endif  // SUBCHAR_RANDOM_H_
