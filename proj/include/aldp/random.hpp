// Copyright 2026 The aldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "aldp/error.hpp"

namespace aldp {

// 64-bit avalanche finalizer (splitmix64 style). Used for stream derivation
// and as the building block of the seeded hash family.
inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seeded random stream over a xoshiro256++ core. The contract is: the same
// seed yields a bit-identical draw sequence, and derive(master, stream)
// produces streams that are independent across stream indices, so per-user
// randomness is derived from (master seed, user index) and can be consumed
// in parallel. Seeding is cheap on purpose; experiment loops derive millions
// of short-lived streams.
//
// All primitives are hand-rolled on top of the raw 64-bit output so the
// sequence does not depend on standard-library distribution internals.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : seed_(seed) {
    uint64_t sm = seed;
    for (uint64_t& word : state_) {
      sm += 0x9E3779B97F4A7C15ull;
      word = mix64(sm);
    }
  }

  static RandomSource derive(uint64_t master_seed, uint64_t stream) {
    return RandomSource(mix64(master_seed ^ mix64(stream)));
  }

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() {
    const uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, m). Rejection against a power-of-two mask keeps
  // the distribution exact for any m.
  uint64_t uniform_int(uint64_t m) {
    if (m == 0) throw Error("uniform_int: m must be positive");
    if (m == 1) return 0;
    const uint64_t mask = ~0ull >> std::countl_zero(m - 1);
    uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= m);
    return v;
  }

  // Standard normal via Box-Muller; one value per call, two uniforms consumed.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // m distinct indices drawn uniformly from [0, n), returned sorted.
  std::vector<uint32_t> sample_without_replacement(uint32_t m, uint32_t n) {
    if (m > n) throw Error("sample_without_replacement: m > n");
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (uint32_t i = 0; i < m; ++i) {
      const uint32_t j = i + static_cast<uint32_t>(uniform_int(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  uint64_t state_[4];
  uint64_t seed_;
};

// Convenience for deriving nested stream indices from a tuple of values,
// e.g. (kind, rep, user).
inline uint64_t stream_key(uint64_t a, uint64_t b = 0, uint64_t c = 0, uint64_t d = 0) {
  return mix64(a ^ mix64(b ^ mix64(c ^ mix64(d))));
}

}  // namespace aldp
