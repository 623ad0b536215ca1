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

#include "aldp/dataset.hpp"
#include "aldp/random.hpp"

namespace aldp {

// N x d tuples drawn i.i.d. from N(0, 1/16), clamped to [-1, 1]. The clamp
// affects about 6e-5 of draws (4 standard deviations), a negligible bias.
Dataset gen_gaussian_numeric(uint64_t n, int d, RandomSource& rng);

// N draws from a power-law over [0, k-1]: value r has probability
// (r+1)^{-s} / sum_{m=1..k} m^{-s}.
Dataset gen_zipf_categorical(uint64_t n, uint32_t k, double s, RandomSource& rng);

// Sampler form used when the cumulative table should be reused.
class ZipfSampler {
 public:
  ZipfSampler(uint32_t k, double s);
  uint32_t sample(RandomSource& rng) const;
  double pmf(uint32_t value) const;

 private:
  std::vector<double> cumulative_;
};

}  // namespace aldp
