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

#include <cmath>
#include <string>

#include "aldp/error.hpp"

namespace aldp {

// Privacy budget (epsilon, delta). epsilon must be positive and delta must
// lie in [0, 1); construction fails otherwise. delta == 0 selects the pure
// regime.
class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon, double delta) : epsilon_(epsilon), delta_(delta) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0) {
      throw InvalidBudget("epsilon must satisfy epsilon > 0, got " + std::to_string(epsilon));
    }
    if (!std::isfinite(delta) || delta < 0.0 || delta >= 1.0) {
      throw InvalidBudget("delta must satisfy 0 <= delta < 1, got " + std::to_string(delta));
    }
  }

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // Budget scaled down for composing over `parts` sub-releases.
  PrivacyBudget split(int parts) const {
    return PrivacyBudget(epsilon_ / parts, delta_ / parts);
  }

 private:
  double epsilon_;
  double delta_;
};

inline PrivacyBudget validate_budget(double epsilon, double delta) {
  return PrivacyBudget(epsilon, delta);
}

}  // namespace aldp
