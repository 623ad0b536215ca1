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
#include <span>
#include <string>
#include <vector>

#include "aldp/budget.hpp"
#include "aldp/random.hpp"

namespace aldp {

// Frequency-oracle protocols. grr reports a value, prr/sprr a perturbed
// one-hot bit vector, lh/olh a (hash seed, hashed value) pair, opt_gm a
// one-hot vector with Gaussian noise per bit.
enum class Protocol { grr, prr, sprr, lh, olh, opt_gm };

std::string to_string(Protocol protocol);
Protocol protocol_from_string(const std::string& name);

// Client/aggregator probability characterization of a protocol:
//   p  - probability the encoding of the true value is kept
//   q  - probability any other value/bit is reported as supporting
//   p*, q* - aggregation-side support probabilities used by the estimator
// g is the hash range for lh/olh, sigma the per-bit noise scale for opt_gm.
struct ProtocolParams {
  Protocol protocol;
  uint32_t k = 0;
  PrivacyBudget budget;
  double p = 0.0;
  double q = 0.0;
  double p_star = 0.0;
  double q_star = 0.0;
  uint32_t g = 0;
  double sigma = 0.0;
};

ProtocolParams grr_params(uint32_t k, const PrivacyBudget& budget);

// Bit-flip protocol with a caller-chosen q; p is derived so the bit-level
// privacy inequality p(1-q) <= e^eps q(1-p) + delta holds with equality.
ProtocolParams prr_params(uint32_t k, const PrivacyBudget& budget, double q_free);

// Symmetric special case p + q = 1.
ProtocolParams sprr_params(uint32_t k, const PrivacyBudget& budget);

ProtocolParams lh_params(uint32_t k, const PrivacyBudget& budget, uint32_t g);

// Hash range minimizing the aggregation-side variance; closed form with an
// integer-grid fallback, and the e^eps + 1 limit below delta = 1e-12.
uint32_t olh_optimal_g(const PrivacyBudget& budget);

ProtocolParams olh_params(uint32_t k, const PrivacyBudget& budget);

// One-hot encoding plus per-bit Gaussian noise; sensitivity sqrt(2) since two
// encodings differ in exactly two bits.
ProtocolParams opt_gm_params(uint32_t k, const PrivacyBudget& budget);

struct CategoricalReport {
  Protocol protocol;
  uint32_t value = 0;           // grr
  std::vector<uint8_t> bits;    // prr / sprr, one byte per bit
  uint64_t hash_seed = 0;       // lh / olh
  uint16_t hashed = 0;          // lh / olh
  std::vector<double> noisy;    // opt_gm
};

CategoricalReport perturb_categorical(uint32_t value, const ProtocolParams& params,
                                      RandomSource& rng);

// Raw estimates are kept alongside the post-processed ones: error metrics use
// the unclipped values, reporting uses the clipped-and-renormalized ones.
struct FrequencyEstimate {
  std::vector<double> counts;           // unbiased count estimates, may be negative
  std::vector<double> raw_frequencies;  // counts / N, pre-clipping
  std::vector<double> frequencies;      // clipped to >= 0 and renormalized
  uint64_t n = 0;
};

// Associative support-count fold; partial accumulators merge by addition so
// aggregation can be sharded.
class SupportAccumulator {
 public:
  explicit SupportAccumulator(const ProtocolParams& params);
  void add(const CategoricalReport& report);
  void merge(const SupportAccumulator& other);
  uint64_t count() const { return n_; }
  FrequencyEstimate finalize() const;

 private:
  ProtocolParams params_;
  std::vector<double> support_;
  uint64_t n_ = 0;
};

FrequencyEstimate estimate_frequencies(std::span<const CategoricalReport> reports,
                                       const ProtocolParams& params);

// Exact support-count variance for a value of frequency f among n users,
//   n q*(1-q*)/(p*-q*)^2 + n f (1-p*-q*)/(p*-q*),
// and its small-frequency approximation (first term only). For opt_gm both
// equal n sigma^2.
struct VarianceEstimate {
  double exact;
  double approx;
};

VarianceEstimate analytic_variance(const ProtocolParams& params, uint64_t n, double f_v);

}  // namespace aldp
