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

#include <cstdint>

#include "aldp/random.hpp"

namespace aldp {

// Seeded 64-bit hash with avalanche mixing. Over a uniformly random seed, two
// fixed distinct inputs collide modulo g with probability close to 1/g, which
// is what the hashing protocols need from the family.
inline uint64_t seeded_hash(uint64_t seed, uint64_t value) {
  return mix64(mix64(value) ^ seed);
}

inline uint32_t seeded_hash_mod(uint64_t seed, uint64_t value, uint32_t g) {
  return static_cast<uint32_t>(seeded_hash(seed, value) % g);
}

}  // namespace aldp
