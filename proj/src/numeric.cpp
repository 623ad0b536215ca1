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

#include "aldp/numeric.hpp"

#include <bit>
#include <cmath>

#include "aldp/error.hpp"

namespace aldp {

namespace {

constexpr int kMaxDim = 62;
constexpr double kDomainSlack = 1e-9;

void check_dim(int d) {
  if (d < 1) throw Error("dimension must be >= 1");
  if (d > kMaxDim) {
    throw Overflow("dimension " + std::to_string(d) + " exceeds exact-arithmetic limit " +
                   std::to_string(kMaxDim));
  }
}

// Minimum agreement count (positions where output sign equals the sampled
// direction) that puts an output into the near set. The dot product equals
// (2m - d) * B for agreement count m.
int near_min_agree(int d, TieRule rule) {
  return rule == TieRule::strict ? d / 2 + 1 : (d + 1) / 2;
}

}  // namespace

double clamp_domain(double x) {
  if (!std::isfinite(x)) throw NonFiniteInput("non-finite input component");
  if (x > 1.0) {
    if (x > 1.0 + kDomainSlack) throw Error("input component outside [-1,1]: " + std::to_string(x));
    return 1.0;
  }
  if (x < -1.0) {
    if (x < -1.0 - kDomainSlack) throw Error("input component outside [-1,1]: " + std::to_string(x));
    return -1.0;
  }
  return x;
}

uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > kMaxDim) throw Overflow("binomial(" + std::to_string(n) + ", ...) exceeds 64-bit range");
  k = std::min(k, n - k);
  // Pascal row; all values for n <= 62 fit in uint64.
  std::vector<uint64_t> row(static_cast<size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      if (row[j] > ~0ull - row[j - 1]) throw Overflow("binomial overflow");
      row[j] += row[j - 1];
    }
  }
  return row[static_cast<size_t>(k)];
}

uint64_t compute_Cd(int d) {
  check_dim(d);
  uint64_t half = 1ull << (d - 1);
  if (d % 2 == 1) return half;
  return half - binomial(d, d / 2) / 2;
}

double compute_B(int d, const PrivacyBudget& budget) {
  check_dim(d);
  const double e = std::exp(budget.epsilon());
  const double cd = static_cast<double>(compute_Cd(d));
  if (cd * budget.delta() >= 1.0) {
    throw ConstraintViolated("requires C_d * delta < 1 (d=" + std::to_string(d) + ")");
  }
  const double pow2d = std::ldexp(1.0, d);
  const double binom =
      static_cast<double>(d % 2 == 1 ? binomial(d - 1, (d - 1) / 2) : binomial(d - 1, d / 2));
  return (pow2d + cd * (e - 1.0)) / (binom * (e + pow2d * budget.delta() - 1.0));
}

double compute_alpha(int d, const PrivacyBudget& budget, TieRule rule) {
  check_dim(d);
  const double e = std::exp(budget.epsilon());
  const double delta = budget.delta();
  const double cd = static_cast<double>(compute_Cd(d));
  const double pow2d = std::ldexp(1.0, d);
  if (cd * delta >= 1.0) {
    throw ConstraintViolated("requires C_d * delta < 1 (d=" + std::to_string(d) + ")");
  }
  if (d % 2 == 1) {
    return (e + cd * delta) / (e + 1.0);
  }
  if (rule == TieRule::strict) {
    // near set has C_d elements, far set 2^d - C_d
    return (e * cd + delta * cd * (pow2d - cd)) / ((e - 1.0) * cd + pow2d);
  }
  // inclusive: near set has 2^d - C_d elements, far set C_d; alpha < 1 now
  // needs (2^d - C_d) * delta < 1, a stricter condition than C_d * delta < 1.
  if ((pow2d - cd) * delta >= 1.0) {
    throw ConstraintViolated("inclusive rule requires |T+| * delta < 1 (d=" + std::to_string(d) +
                             ")");
  }
  return (e * (pow2d - cd) + delta * cd * (pow2d - cd)) / (e * (pow2d - cd) + cd);
}

std::string to_string(NumericMechanism mech) {
  switch (mech) {
    case NumericMechanism::mech1: return "mech1";
    case NumericMechanism::mech2: return "mech2";
    case NumericMechanism::onedim: return "onedim";
    case NumericMechanism::duchi: return "duchi";
    case NumericMechanism::gaussian: return "gaussian";
  }
  return "unknown";
}

namespace {

// Fills the set sizes and cumulative agreement-count weights of a vertex
// mechanism once alpha and b are known.
void finish_vertex_mechanism(VertexMechanism& vm) {
  const int d = vm.d;
  vm.plus_min_agree = near_min_agree(d, vm.rule);
  vm.plus_cum.clear();
  vm.minus_cum.clear();
  uint64_t acc = 0;
  for (int m = vm.plus_min_agree; m <= d; ++m) {
    acc += binomial(d, m);
    vm.plus_cum.push_back(acc);
  }
  vm.t_plus = acc;
  acc = 0;
  for (int m = 0; m < vm.plus_min_agree; ++m) {
    acc += binomial(d, m);
    vm.minus_cum.push_back(acc);
  }
  vm.t_minus = acc;
}

// Shared sampler: discretize x to a direction v, pick near/far set by a
// Bernoulli(alpha) draw, then emit a uniform element of the set by sampling
// the agreement count from its binomial profile and the agreeing positions
// uniformly. Tuples with equal agreement count are exchangeable, so this is
// an exact uniform draw without enumerating 2^d tuples.
NumericReport vertex_perturb(std::span<const double> x, const VertexMechanism& vm,
                             RandomSource& rng, NumericMechanism tag) {
  const int d = vm.d;
  if (static_cast<int>(x.size()) != d) throw DimensionMismatch("tuple width != mechanism d");
  std::vector<int8_t> v(d);
  for (int j = 0; j < d; ++j) {
    const double xj = clamp_domain(x[j]);
    v[j] = rng.bernoulli(0.5 + 0.5 * xj) ? 1 : -1;
  }
  const bool near = rng.bernoulli(vm.alpha);
  const auto& cum = near ? vm.plus_cum : vm.minus_cum;
  const uint64_t total = near ? vm.t_plus : vm.t_minus;
  const int base = near ? vm.plus_min_agree : 0;
  const uint64_t r = rng.uniform_int(total);
  int m = base;
  for (size_t i = 0; i < cum.size(); ++i) {
    if (r < cum[i]) {
      m = base + static_cast<int>(i);
      break;
    }
  }
  std::vector<uint32_t> agree = rng.sample_without_replacement(static_cast<uint32_t>(m),
                                                               static_cast<uint32_t>(d));
  NumericReport report;
  report.mechanism = tag;
  report.values.assign(d, 0.0);
  size_t a = 0;
  for (int j = 0; j < d; ++j) {
    bool agrees = a < agree.size() && agree[a] == static_cast<uint32_t>(j);
    if (agrees) ++a;
    report.values[j] = vm.b * (agrees ? v[j] : -v[j]);
  }
  return report;
}

}  // namespace

double VertexMechanism::vertex_output_probability(uint64_t y_bits, uint64_t w_bits) const {
  // For a vertex input the direction equals the input with probability 1, so
  // the output law depends only on which set the output falls in.
  const int agree = d - std::popcount((y_bits ^ w_bits) & ((d == 64 ? ~0ull : (1ull << d) - 1)));
  const bool in_near = agree >= plus_min_agree;
  return in_near ? alpha / static_cast<double>(t_plus)
                 : (1.0 - alpha) / static_cast<double>(t_minus);
}

Mech1Params Mech1Params::make(int d, const PrivacyBudget& budget, TieRule rule) {
  check_dim(d);
  Mech1Params params{budget, compute_Cd(d), {}};
  VertexMechanism& vm = params.vm;
  vm.d = d;
  vm.rule = rule;
  vm.alpha = compute_alpha(d, budget, rule);
  if (d % 2 == 1 || rule == TieRule::strict) {
    vm.b = compute_B(d, budget);
  } else {
    // Even d with the inclusive rule swaps the set sizes, which changes the
    // scaling that keeps the output mean equal to the input.
    const double e = std::exp(budget.epsilon());
    const double cd = static_cast<double>(params.c_d);
    const double pow2d = std::ldexp(1.0, d);
    const double binom = static_cast<double>(binomial(d - 1, d / 2));
    vm.b = (e * (pow2d - cd) + cd) / (binom * (e + pow2d * budget.delta() - 1.0));
  }
  finish_vertex_mechanism(vm);
  if (!(vm.b > 1.0)) {
    throw ConstraintViolated("derived output magnitude not > 1");
  }
  return params;
}

NumericReport mech1_perturb(std::span<const double> x, const Mech1Params& params,
                            RandomSource& rng) {
  return vertex_perturb(x, params.vm, rng, NumericMechanism::mech1);
}

double onedim_magnitude(const PrivacyBudget& budget) {
  const double e = std::exp(budget.epsilon());
  return (e + 1.0) / (e + 2.0 * budget.delta() - 1.0);
}

double onedim_prob_positive(double x, const PrivacyBudget& budget) {
  const double e = std::exp(budget.epsilon());
  return 0.5 + clamp_domain(x) * (e + 2.0 * budget.delta() - 1.0) / (2.0 * (e + 1.0));
}

double onedim_perturb(double x, const PrivacyBudget& budget, RandomSource& rng) {
  const double magnitude = onedim_magnitude(budget);
  return rng.bernoulli(onedim_prob_positive(x, budget)) ? magnitude : -magnitude;
}

double onedim_worst_variance(const PrivacyBudget& budget) {
  const double magnitude = onedim_magnitude(budget);
  return magnitude * magnitude;
}

int optimal_k(int d, double epsilon) {
  if (d < 1) throw Error("dimension must be >= 1");
  if (!(epsilon > 0.0)) throw InvalidBudget("epsilon must be positive");
  const int k = static_cast<int>(std::floor(epsilon / 2.17));
  return std::max(1, std::min(d, k));
}

double sampled_dims_worst_variance(int d, int k, const PrivacyBudget& budget) {
  const double w = onedim_magnitude(budget.split(k));
  return static_cast<double>(d) / k * w * w;
}

NumericReport mech2_perturb(std::span<const double> x, const PrivacyBudget& budget,
                            RandomSource& rng) {
  const int d = static_cast<int>(x.size());
  if (d < 1) throw DimensionMismatch("empty tuple");
  const int k = optimal_k(d, budget.epsilon());
  const PrivacyBudget per_dim = budget.split(k);
  const double scale = static_cast<double>(d) / k;
  NumericReport report;
  report.mechanism = NumericMechanism::mech2;
  report.values.assign(d, 0.0);
  for (uint32_t j : rng.sample_without_replacement(k, d)) {
    report.values[j] = scale * onedim_perturb(x[j], per_dim, rng);
  }
  return report;
}

VertexMechanism duchi_params(int d, double epsilon, DuchiVariant variant) {
  check_dim(d);
  if (!(epsilon > 0.0)) throw InvalidBudget("epsilon must be positive");
  const double e = std::exp(epsilon);
  const double cd = static_cast<double>(compute_Cd(d));
  const double pow2d = std::ldexp(1.0, d);
  const double binom =
      static_cast<double>(d % 2 == 1 ? binomial(d - 1, (d - 1) / 2) : binomial(d - 1, d / 2));
  VertexMechanism vm;
  vm.d = d;
  if (d % 2 == 1 || variant == DuchiVariant::original) {
    vm.rule = TieRule::strict;
    vm.alpha = e / (e + 1.0);
    vm.b = (pow2d + cd * (e - 1.0)) / (binom * (e - 1.0));
  } else if (variant == DuchiVariant::fixed_strict) {
    vm.rule = TieRule::strict;
    vm.alpha = e * cd / ((e - 1.0) * cd + pow2d);
    vm.b = (pow2d + cd * (e - 1.0)) / (binom * (e - 1.0));
  } else {
    // Corrected retention probability for ties kept in the near set; the
    // magnitude is rescaled so the output stays mean-preserving.
    vm.rule = TieRule::inclusive;
    vm.alpha = e * (pow2d - cd) / (e * (pow2d - cd) + cd);
    vm.b = (e * (pow2d - cd) + cd) / (binom * (e - 1.0));
  }
  finish_vertex_mechanism(vm);
  return vm;
}

NumericReport duchi_perturb(std::span<const double> x, double epsilon, RandomSource& rng,
                            DuchiVariant variant) {
  const VertexMechanism vm = duchi_params(static_cast<int>(x.size()), epsilon, variant);
  return vertex_perturb(x, vm, rng, NumericMechanism::duchi);
}

NumericReport gaussian_perturb_numeric(std::span<const double> x, double sigma,
                                       RandomSource& rng) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  NumericReport report;
  report.mechanism = NumericMechanism::gaussian;
  report.values.reserve(x.size());
  for (double xj : x) {
    report.values.push_back(clamp_domain(xj) + sigma * rng.gaussian());
  }
  return report;
}

}  // namespace aldp
