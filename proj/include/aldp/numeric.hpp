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

// ---------------------------------------------------------------------------
// Exact combinatorics (valid for d <= 62; Overflow beyond).
// ---------------------------------------------------------------------------

// Binomial coefficient in exact 64-bit integer arithmetic.
uint64_t binomial(int n, int k);

// Number of sign tuples in {-1,+1}^d whose dot product with a fixed sign
// tuple is strictly positive: 2^{d-1} for odd d, 2^{d-1} - binom(d, d/2)/2
// for even d.
uint64_t compute_Cd(int d);

// Output magnitude of the hypercube mechanism. Requires C_d * delta < 1.
double compute_B(int d, const PrivacyBudget& budget);

// Tie handling for outputs orthogonal to the discretized input: `strict`
// assigns them to the far set (positive set is dot > 0), `inclusive` to the
// near set (positive set is dot >= 0). For odd d no output is orthogonal and
// the two rules coincide.
enum class TieRule { strict, inclusive };

// Retention probability of the near set. Chosen so the single-output privacy
// inequality holds with equality at the extremal input pair.
double compute_alpha(int d, const PrivacyBudget& budget, TieRule rule = TieRule::strict);

// ---------------------------------------------------------------------------
// Mechanism tags and reports.
// ---------------------------------------------------------------------------

enum class NumericMechanism { mech1, mech2, onedim, duchi, gaussian };

std::string to_string(NumericMechanism mech);

struct NumericReport {
  std::vector<double> values;
  NumericMechanism mechanism;
};

// Sampler state shared by the hypercube mechanisms (the budgeted one and the
// pure-regime baseline). Holds the direction-retention probability, the
// output magnitude and the cumulative agreement-count profile used for
// enumeration-free uniform sampling from the near/far sets.
struct VertexMechanism {
  int d = 0;
  TieRule rule = TieRule::strict;
  double alpha = 0.0;
  double b = 0.0;
  uint64_t t_plus = 0;   // size of the near set
  uint64_t t_minus = 0;  // size of the far set
  int plus_min_agree = 0;
  // cumulative binomial weights over agreement counts, starting at
  // plus_min_agree (near set) and at 0 (far set)
  std::vector<uint64_t> plus_cum;
  std::vector<uint64_t> minus_cum;

  // Probability that the mechanism outputs sign pattern y given a vertex
  // input w in {-1,+1}^d, encoded as bit masks (bit j set means +1). Exact;
  // used by the privacy audit.
  double vertex_output_probability(uint64_t y_bits, uint64_t w_bits) const;
};

// Parameters of the budgeted hypercube mechanism for d dimensions.
struct Mech1Params {
  PrivacyBudget budget;
  uint64_t c_d = 0;
  VertexMechanism vm;

  static Mech1Params make(int d, const PrivacyBudget& budget, TieRule rule = TieRule::strict);
};

// Perturbs x in [-1,1]^d into {-B,+B}^d: discretizes each coordinate to a
// sign with probability (1 + x_j)/2, keeps the aligned half-space with
// probability alpha, and returns a uniform element of the selected set.
NumericReport mech1_perturb(std::span<const double> x, const Mech1Params& params,
                            RandomSource& rng);

// ---------------------------------------------------------------------------
// One-dimensional two-point mechanism and its k-of-d extension.
// ---------------------------------------------------------------------------

// Output magnitude (e^eps + 1) / (e^eps + 2 delta - 1) of the two-point
// mechanism.
double onedim_magnitude(const PrivacyBudget& budget);

// Probability of the positive output for input x in [-1,1].
double onedim_prob_positive(double x, const PrivacyBudget& budget);

// Two-point perturbation of a single value.
double onedim_perturb(double x, const PrivacyBudget& budget, RandomSource& rng);

// Worst-case (x = 0) output variance of the two-point mechanism.
double onedim_worst_variance(const PrivacyBudget& budget);

// Number of dimensions to sample when splitting the budget over a d-dim
// tuple: max{1, min{d, floor(eps / 2.17)}}.
int optimal_k(int d, double epsilon);

// Worst-case per-dimension variance of the k-of-d mechanism when k
// dimensions are reported with budget (eps/k, delta/k) and scaled by d/k.
double sampled_dims_worst_variance(int d, int k, const PrivacyBudget& budget);

// Perturbs x by sampling k = optimal_k(d, eps) dimensions without
// replacement, perturbing each with budget (eps/k, delta/k), scaling by d/k,
// and zeroing the rest.
NumericReport mech2_perturb(std::span<const double> x, const PrivacyBudget& budget,
                            RandomSource& rng);

// ---------------------------------------------------------------------------
// Pure-regime hypercube baseline (delta = 0) with its even-d corrections.
// ---------------------------------------------------------------------------

// `original` keeps the retention probability e^eps/(e^eps+1) for all d, which
// fails the privacy bound for even d. The fixed variants re-derive it from
// the actual set sizes; `fixed_strict` keeps ties in the far set,
// `fixed_inclusive` keeps ties in the near set. For odd d all three coincide.
enum class DuchiVariant { original, fixed_strict, fixed_inclusive };

VertexMechanism duchi_params(int d, double epsilon, DuchiVariant variant);

NumericReport duchi_perturb(std::span<const double> x, double epsilon,
                            RandomSource& rng, DuchiVariant variant = DuchiVariant::original);

// ---------------------------------------------------------------------------
// Additive Gaussian baseline.
// ---------------------------------------------------------------------------

// Adds N(0, sigma^2) independently to every component. No clamping.
NumericReport gaussian_perturb_numeric(std::span<const double> x, double sigma,
                                       RandomSource& rng);

// ---------------------------------------------------------------------------
// Input validation.
// ---------------------------------------------------------------------------

// Components within 1e-9 of [-1,1] are clamped (normalization float noise);
// larger violations raise NonFiniteInput/Error.
double clamp_domain(double x);

}  // namespace aldp
