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
#include <string>
#include <vector>

#include "aldp/categorical.hpp"

namespace aldp {

// Binary container for categorical reports. Little-endian throughout.
//
//   magic   "ALDPRPT1" (8 bytes)
//   u8      protocol (0 grr, 1 prr, 2 sprr, 3 lh, 4 olh, 5 opt_gm)
//   u32     k, u32 g (0 when unused)
//   f64     epsilon, delta, p, q, p_star, q_star, sigma
//   u64     report count N
// followed by N records:
//   grr      u32 value (0-based)
//   prr/sprr ceil(k/8) bytes, bit v at byte v/8, bit v%8 (LSB first)
//   lh/olh   u64 hash seed, u16 hashed value
//   opt_gm   k f64 components
struct ReportFile {
  ProtocolParams params;
  std::vector<CategoricalReport> reports;
};

void write_reports(const std::string& path, const ProtocolParams& params,
                   const std::vector<CategoricalReport>& reports);

ReportFile read_reports(const std::string& path);

}  // namespace aldp
