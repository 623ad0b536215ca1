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

#include <string>

#include "aldp/budget.hpp"
#include "aldp/categorical.hpp"
#include "aldp/numeric.hpp"

namespace aldp {

// Result of exhaustively checking P[y|x] <= e^eps P[y|x'] + delta over all
// admissible input pairs and all outputs of a discrete mechanism, with the
// probabilities computed analytically. max_excess is the largest value of
// P[y|x] - e^eps P[y|x']; the audit passes when it is at most
// delta + tolerance. max_ratio is the largest probability ratio, meaningful
// when delta = 0.
struct AuditResult {
  std::string mechanism;
  double epsilon = 0.0;
  double delta = 0.0;
  double max_excess = 0.0;
  double max_ratio = 0.0;
  uint64_t pairs_checked = 0;
  bool pass = false;
  double tolerance = 1e-12;
};

// Hypercube mechanisms: inputs range over the vertex grid {-1,+1}^d, where
// the output law is extremal; outputs over all 2^d sign patterns. d <= 16.
AuditResult audit_mech1(int d, const PrivacyBudget& budget, TieRule rule = TieRule::strict);
AuditResult audit_duchi(int d, double epsilon, DuchiVariant variant);

// Two-point mechanism, inputs {-1, +1}.
AuditResult audit_onedim(const PrivacyBudget& budget);

// Value-perturbing protocols (grr; lh/olh for a fixed hash seed).
AuditResult audit_value_protocol(const ProtocolParams& params);

// Bit-flip protocols over all 2^k output patterns. k <= 16.
AuditResult audit_bit_protocol(const ProtocolParams& params);

std::string describe(const AuditResult& result);

}  // namespace aldp
