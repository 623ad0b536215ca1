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

#include "aldp/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "aldp/error.hpp"

namespace aldp {

Dataset gen_gaussian_numeric(uint64_t n, int d, RandomSource& rng) {
  if (n < 1 || d < 1) throw Error("need n >= 1 and d >= 1");
  Dataset dataset;
  dataset.numeric_names.reserve(d);
  for (int j = 0; j < d; ++j) dataset.numeric_names.push_back("a" + std::to_string(j + 1));
  dataset.numeric.assign(n, std::vector<double>(d));
  for (auto& row : dataset.numeric) {
    for (double& cell : row) {
      cell = std::clamp(0.25 * rng.gaussian(), -1.0, 1.0);
    }
  }
  return dataset;
}

ZipfSampler::ZipfSampler(uint32_t k, double s) {
  if (k < 2) throw Error("zipf needs k >= 2");
  if (!(s > 0.0)) throw Error("zipf needs s > 0");
  cumulative_.resize(k);
  double total = 0.0;
  for (uint32_t r = 0; r < k; ++r) {
    total += std::pow(static_cast<double>(r + 1), -s);
    cumulative_[r] = total;
  }
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

uint32_t ZipfSampler::sample(RandomSource& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<uint32_t>(it - cumulative_.begin());
}

double ZipfSampler::pmf(uint32_t value) const {
  if (value >= cumulative_.size()) throw Error("zipf value out of range");
  return value == 0 ? cumulative_[0] : cumulative_[value] - cumulative_[value - 1];
}

Dataset gen_zipf_categorical(uint64_t n, uint32_t k, double s, RandomSource& rng) {
  if (n < 1) throw Error("need n >= 1");
  ZipfSampler sampler(k, s);
  Dataset dataset;
  dataset.categorical_names.push_back("c1");
  dataset.domain_sizes.push_back(k);
  dataset.categorical.assign(n, std::vector<uint32_t>(1));
  for (auto& row : dataset.categorical) row[0] = sampler.sample(rng);
  return dataset;
}

}  // namespace aldp
