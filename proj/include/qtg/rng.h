// Copyright 2026 The QTG Knapsack Authors
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

#ifndef QTG_RNG_H_
#define QTG_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace qtg {

// Reproducible random stream addressed by a seed plus a key path, e.g.
// (seed, run, round) or (seed, round, block). Two streams with different
// keys are statistically independent; the same key always replays the same
// sequence, so work can be split across threads without changing results.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
    std::vector<std::uint32_t> material;
    auto push = [&](std::uint64_t v) {
      material.push_back(static_cast<std::uint32_t>(v));
      material.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    push(key.size());
    for (auto k : key) push(k);
    std::seed_seq seq(material.begin(), material.end());
    engine_.seed(seq);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit FNV-1a hash, used to derive per-instance stream keys.
inline std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace qtg

#endif  // QTG_RNG_H_
