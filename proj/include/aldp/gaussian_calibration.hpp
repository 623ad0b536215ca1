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

#include "aldp/budget.hpp"

namespace aldp {

// Complementary error function. Relative error <= 1e-14 on |x| <= 6,
// absolute error <= 1e-300 beyond.
double erfc(double x);

// Root xi of  erfc(xi) - e^eps * erfc(sqrt(xi^2 + eps)) = 2 delta.
// The left side is continuous and strictly decreasing in xi, so the root is
// found by an expanding bracket followed by bisection; residual <= 1e-12.
// Requires 0 < delta < 1. xi may be negative for large delta.
double solve_xi(const PrivacyBudget& budget);

// Tightest Gaussian noise scale for the budget:
//   sigma = (xi + sqrt(xi^2 + eps)) * sensitivity / (eps * sqrt(2)).
struct GaussianCalibration {
  double xi;
  double sigma;
  double sensitivity;
  PrivacyBudget budget;
};

GaussianCalibration optimal_sigma(const PrivacyBudget& budget, double sensitivity);

// Widely used but loose calibration sqrt(2 ln(1.25/delta)) * sensitivity/eps,
// kept for comparison.
double classical_gaussian_sigma(const PrivacyBudget& budget, double sensitivity);

// Privacy loss of Gaussian noise sigma at the two-point worst case:
//   Phi(D/(2 sigma) - eps sigma/D) - e^eps Phi(-D/(2 sigma) - eps sigma/D),
// which must be <= delta for the mechanism to meet the budget.
double gaussian_two_point_delta(double epsilon, double sigma, double sensitivity);

}  // namespace aldp
