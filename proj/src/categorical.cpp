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

#include "aldp/categorical.hpp"

#include <cmath>

#include "aldp/error.hpp"
#include "aldp/gaussian_calibration.hpp"
#include "aldp/hash.hpp"

namespace aldp {

namespace {

constexpr double kOlhClosedFormMinDelta = 1e-12;

void check_domain(uint32_t k) {
  if (k < 2) throw Error("categorical domain needs k >= 2");
}

void check_value(uint32_t value, uint32_t k) {
  if (value >= k) throw Error("categorical value out of domain");
}

// Aggregation-side variance of the hashing protocol as a function of g,
// dropping the n factor: (e^eps + g - 1)^2 / ((g-1)(e^eps + g delta - 1)^2).
double lh_variance_shape(double e, double delta, double g) {
  const double num = e + g - 1.0;
  const double den = e + g * delta - 1.0;
  return num * num / ((g - 1.0) * den * den);
}

}  // namespace

std::string to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::grr: return "grr";
    case Protocol::prr: return "prr";
    case Protocol::sprr: return "sprr";
    case Protocol::lh: return "lh";
    case Protocol::olh: return "olh";
    case Protocol::opt_gm: return "optgm";
  }
  return "unknown";
}

Protocol protocol_from_string(const std::string& name) {
  if (name == "grr") return Protocol::grr;
  if (name == "prr") return Protocol::prr;
  if (name == "sprr") return Protocol::sprr;
  if (name == "lh") return Protocol::lh;
  if (name == "olh") return Protocol::olh;
  if (name == "optgm" || name == "opt_gm") return Protocol::opt_gm;
  throw Error("unknown protocol: " + name);
}

ProtocolParams grr_params(uint32_t k, const PrivacyBudget& budget) {
  check_domain(k);
  const double e = std::exp(budget.epsilon());
  const double delta = budget.delta();
  ProtocolParams params{Protocol::grr, k, budget};
  params.p = (e + (k - 1.0) * delta) / (e + k - 1.0);
  params.q = (1.0 - delta) / (e + k - 1.0);
  params.p_star = params.p;
  params.q_star = params.q;
  return params;
}

ProtocolParams prr_params(uint32_t k, const PrivacyBudget& budget, double q_free) {
  check_domain(k);
  if (!(q_free > 0.0 && q_free < 1.0)) throw InvalidQ("q must lie in (0,1)");
  const double e = std::exp(budget.epsilon());
  const double delta = budget.delta();
  ProtocolParams params{Protocol::prr, k, budget};
  params.q = q_free;
  params.p = (q_free * e + delta) / (1.0 - q_free + q_free * e);
  if (params.p > 1.0) throw InvalidQ("p exceeds 1; q too large for this delta");
  if (params.p <= params.q) throw InvalidQ("derived p <= q");
  params.p_star = params.p;
  params.q_star = params.q;
  return params;
}

ProtocolParams sprr_params(uint32_t k, const PrivacyBudget& budget) {
  check_domain(k);
  const double e = std::exp(budget.epsilon());
  const double delta = budget.delta();
  ProtocolParams params{Protocol::sprr, k, budget};
  params.p = (e - std::sqrt(e * (1.0 - delta) + delta)) / (e - 1.0);
  params.q = 1.0 - params.p;
  params.p_star = params.p;
  params.q_star = params.q;
  return params;
}

ProtocolParams lh_params(uint32_t k, const PrivacyBudget& budget, uint32_t g) {
  check_domain(k);
  if (g < 2) throw Error("hash range needs g >= 2");
  const double e = std::exp(budget.epsilon());
  const double delta = budget.delta();
  ProtocolParams params{Protocol::lh, k, budget};
  params.g = g;
  params.p = (e + (g - 1.0) * delta) / (e + g - 1.0);
  params.q = (1.0 - delta) / (e + g - 1.0);
  params.p_star = params.p;
  params.q_star = 1.0 / g;
  return params;
}

uint32_t olh_optimal_g(const PrivacyBudget& budget) {
  const double e = std::exp(budget.epsilon());
  const double delta = budget.delta();
  double g_real;
  bool have_closed_form = true;
  if (delta < kOlhClosedFormMinDelta) {
    g_real = e + 1.0;  // exact optimum of the variance shape at delta -> 0
  } else {
    const double disc = (1.0 - delta) * (e + delta - 9.0 * e * delta - 1.0);
    if (disc < 0.0) {
      have_closed_form = false;  // outside the closed form's validity
      g_real = 0.0;
    } else {
      g_real = (-3.0 * e * delta - std::sqrt(e - 1.0) * std::sqrt(disc) + e + 3.0 * delta - 1.0) /
               (2.0 * delta);
    }
  }
  if (have_closed_form && std::isfinite(g_real)) {
    const double lo = std::max(2.0, std::floor(g_real));
    const double hi = std::max(2.0, std::ceil(g_real));
    const double var_lo = lh_variance_shape(e, delta, lo);
    const double var_hi = lh_variance_shape(e, delta, hi);
    return static_cast<uint32_t>(var_lo <= var_hi ? lo : hi);
  }
  // Fallback: integer grid search of the variance shape.
  uint32_t best_g = 2;
  double best = lh_variance_shape(e, delta, 2.0);
  const uint32_t limit = static_cast<uint32_t>(std::min(10.0 * (e + 1.0) + 2.0, 1e7));
  for (uint32_t g = 3; g <= limit; ++g) {
    const double v = lh_variance_shape(e, delta, g);
    if (v < best) {
      best = v;
      best_g = g;
    }
  }
  return best_g;
}

ProtocolParams olh_params(uint32_t k, const PrivacyBudget& budget) {
  ProtocolParams params = lh_params(k, budget, olh_optimal_g(budget));
  params.protocol = Protocol::olh;
  return params;
}

ProtocolParams opt_gm_params(uint32_t k, const PrivacyBudget& budget) {
  check_domain(k);
  ProtocolParams params{Protocol::opt_gm, k, budget};
  params.sigma = optimal_sigma(budget, std::sqrt(2.0)).sigma;
  // Support probabilities are not used by the estimator for this protocol.
  params.p = params.p_star = 1.0;
  params.q = params.q_star = 0.0;
  return params;
}

CategoricalReport perturb_categorical(uint32_t value, const ProtocolParams& params,
                                      RandomSource& rng) {
  check_value(value, params.k);
  CategoricalReport report;
  report.protocol = params.protocol;
  switch (params.protocol) {
    case Protocol::grr: {
      if (rng.bernoulli(params.p)) {
        report.value = value;
      } else {
        uint32_t other = static_cast<uint32_t>(rng.uniform_int(params.k - 1));
        report.value = other < value ? other : other + 1;
      }
      break;
    }
    case Protocol::prr:
    case Protocol::sprr: {
      report.bits.assign(params.k, 0);
      for (uint32_t i = 0; i < params.k; ++i) {
        const double keep = i == value ? params.p : params.q;
        report.bits[i] = rng.bernoulli(keep) ? 1 : 0;
      }
      break;
    }
    case Protocol::lh:
    case Protocol::olh: {
      report.hash_seed = rng.next_u64();
      const uint32_t hashed = seeded_hash_mod(report.hash_seed, value, params.g);
      if (rng.bernoulli(params.p)) {
        report.hashed = static_cast<uint16_t>(hashed);
      } else {
        uint32_t other = static_cast<uint32_t>(rng.uniform_int(params.g - 1));
        report.hashed = static_cast<uint16_t>(other < hashed ? other : other + 1);
      }
      break;
    }
    case Protocol::opt_gm: {
      report.noisy.assign(params.k, 0.0);
      for (uint32_t i = 0; i < params.k; ++i) {
        report.noisy[i] = (i == value ? 1.0 : 0.0) + params.sigma * rng.gaussian();
      }
      break;
    }
  }
  return report;
}

SupportAccumulator::SupportAccumulator(const ProtocolParams& params)
    : params_(params), support_(params.k, 0.0) {}

void SupportAccumulator::add(const CategoricalReport& report) {
  if (report.protocol != params_.protocol) {
    throw MixedProtocolReports("report protocol does not match estimator params");
  }
  switch (params_.protocol) {
    case Protocol::grr:
      check_value(report.value, params_.k);
      support_[report.value] += 1.0;
      break;
    case Protocol::prr:
    case Protocol::sprr:
      if (report.bits.size() != params_.k) throw DimensionMismatch("bit report width != k");
      for (uint32_t v = 0; v < params_.k; ++v) {
        if (report.bits[v]) support_[v] += 1.0;
      }
      break;
    case Protocol::lh:
    case Protocol::olh:
      for (uint32_t v = 0; v < params_.k; ++v) {
        if (seeded_hash_mod(report.hash_seed, v, params_.g) == report.hashed) {
          support_[v] += 1.0;
        }
      }
      break;
    case Protocol::opt_gm:
      if (report.noisy.size() != params_.k) throw DimensionMismatch("noisy report width != k");
      for (uint32_t v = 0; v < params_.k; ++v) support_[v] += report.noisy[v];
      break;
  }
  ++n_;
}

void SupportAccumulator::merge(const SupportAccumulator& other) {
  if (other.params_.protocol != params_.protocol || other.params_.k != params_.k) {
    throw MixedProtocolReports("cannot merge accumulators with different protocols");
  }
  for (uint32_t v = 0; v < params_.k; ++v) support_[v] += other.support_[v];
  n_ += other.n_;
}

FrequencyEstimate SupportAccumulator::finalize() const {
  FrequencyEstimate estimate;
  estimate.n = n_;
  estimate.counts.resize(params_.k);
  const double n = static_cast<double>(n_);
  for (uint32_t v = 0; v < params_.k; ++v) {
    if (params_.protocol == Protocol::opt_gm) {
      // The noisy one-hot sums are already unbiased counts; round to integers.
      estimate.counts[v] = std::round(support_[v]);
    } else {
      estimate.counts[v] =
          (support_[v] - n * params_.q_star) / (params_.p_star - params_.q_star);
    }
  }
  estimate.raw_frequencies.resize(params_.k);
  for (uint32_t v = 0; v < params_.k; ++v) {
    estimate.raw_frequencies[v] = n_ > 0 ? estimate.counts[v] / n : 0.0;
  }
  // Post-processing for reporting only: clip negatives, renormalize to a
  // probability vector.
  estimate.frequencies = estimate.raw_frequencies;
  double total = 0.0;
  for (double& f : estimate.frequencies) {
    if (f < 0.0) f = 0.0;
    total += f;
  }
  if (total > 0.0) {
    for (double& f : estimate.frequencies) f /= total;
  } else {
    for (double& f : estimate.frequencies) f = 1.0 / params_.k;
  }
  return estimate;
}

FrequencyEstimate estimate_frequencies(std::span<const CategoricalReport> reports,
                                       const ProtocolParams& params) {
  SupportAccumulator acc(params);
  for (const CategoricalReport& report : reports) acc.add(report);
  return acc.finalize();
}

VarianceEstimate analytic_variance(const ProtocolParams& params, uint64_t n, double f_v) {
  const double nn = static_cast<double>(n);
  if (params.protocol == Protocol::opt_gm) {
    const double v = nn * params.sigma * params.sigma;
    return VarianceEstimate{v, v};
  }
  const double p = params.p_star;
  const double q = params.q_star;
  const double gap = p - q;
  const double approx = nn * q * (1.0 - q) / (gap * gap);
  const double exact = approx + nn * f_v * (1.0 - p - q) / gap;
  return VarianceEstimate{exact, approx};
}

}  // namespace aldp
