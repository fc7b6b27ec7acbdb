// Copyright 2026 The Authors.
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

#ifndef ASEL_RNG_HPP_
#define ASEL_RNG_HPP_

#include <cstdint>
#include <random>

namespace asel {

// Independent consumers of randomness draw from disjoint substreams.
enum class StreamTag : std::uint64_t {
  kChannel = 1,
  kGaussianGain = 2,
  kRankPermutation = 3,
  kOracle = 4,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: the generator for (seed, tag, index) does
// not depend on which other indices were drawn or in which order.
struct RngStreamSpec {
  std::uint64_t master_seed = 1;

  std::mt19937_64 substream(StreamTag tag, std::uint64_t index) const {
    std::uint64_t key = splitmix64(master_seed);
    key = splitmix64(key ^ static_cast<std::uint64_t>(tag));
    key = splitmix64(key ^ index);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return std::mt19937_64(seq);
  }
};

}  // namespace asel

#endif  // ASEL_RNG_HPP_
