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

#include "aldp/gaussian_calibration.hpp"

#include <cmath>

#include "aldp/error.hpp"

namespace aldp {

namespace {

constexpr double kBracketLimit = 50.0;
constexpr int kMaxBisections = 200;
constexpr double kWidthTolerance = 1e-14;

double calibration_residual(double xi, double epsilon, double delta) {
  return erfc(xi) - std::exp(epsilon) * erfc(std::sqrt(xi * xi + epsilon)) - 2.0 * delta;
}

double standard_normal_cdf(double x) { return 0.5 * erfc(-x / std::sqrt(2.0)); }

}  // namespace

double erfc(double x) { return std::erfc(x); }

double solve_xi(const PrivacyBudget& budget) {
  const double epsilon = budget.epsilon();
  const double delta = budget.delta();
  if (delta <= 0.0) throw InvalidBudget("calibration requires delta > 0");

  // The residual tends to 2 - 2 delta > 0 as xi -> -inf and to -2 delta < 0
  // as xi -> +inf. Expand until the bracket straddles the root.
  double lo = -1.0, hi = 1.0;
  while (calibration_residual(hi, epsilon, delta) > 0.0) {
    hi *= 2.0;
    if (hi > kBracketLimit) throw NoRootInBracket("no sign change up to xi = 50");
  }
  while (calibration_residual(lo, epsilon, delta) < 0.0) {
    lo *= 2.0;
    if (lo < -kBracketLimit) throw NoRootInBracket("no sign change down to xi = -50");
  }
  for (int i = 0; i < kMaxBisections && hi - lo > kWidthTolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (calibration_residual(mid, epsilon, delta) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GaussianCalibration optimal_sigma(const PrivacyBudget& budget, double sensitivity) {
  if (!(sensitivity > 0.0)) throw Error("sensitivity must be positive");
  const double xi = solve_xi(budget);
  const double sigma = (xi + std::sqrt(xi * xi + budget.epsilon())) * sensitivity /
                       (budget.epsilon() * std::sqrt(2.0));
  return GaussianCalibration{xi, sigma, sensitivity, budget};
}

double classical_gaussian_sigma(const PrivacyBudget& budget, double sensitivity) {
  return sensitivity * std::sqrt(2.0 * std::log(1.25 / budget.delta())) / budget.epsilon();
}

double gaussian_two_point_delta(double epsilon, double sigma, double sensitivity) {
  const double a = sensitivity / (2.0 * sigma);
  const double b = epsilon * sigma / sensitivity;
  return standard_normal_cdf(a - b) - std::exp(epsilon) * standard_normal_cdf(-a - b);
}

}  // namespace aldp
