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

namespace aldp {

// A user's numeric tuple; every component lies in [-1, 1] after ingestion.
struct NumericTuple {
  std::vector<double> values;
};

// Categorical value as a 0-based index into a domain of size k. File formats
// and docs use the 1-based convention; it is converted at the I/O boundary.
struct CategoricalValue {
  uint32_t index = 0;
  uint32_t domain_size = 0;
};

// Column-structured user data. Rows are users; numeric cells are normalized
// into [-1, 1], categorical cells are 0-based indices.
struct Dataset {
  std::vector<std::string> numeric_names;
  std::vector<std::string> categorical_names;
  std::vector<uint32_t> domain_sizes;                 // per categorical column
  std::vector<std::vector<double>> numeric;           // N x d_num
  std::vector<std::vector<uint32_t>> categorical;     // N x d_cat
  size_t size() const { return numeric.empty() ? categorical.size() : numeric.size(); }
  size_t numeric_width() const { return numeric_names.size(); }
  size_t categorical_width() const { return categorical_names.size(); }
};

// Affine map onto [-1, 1]: x -> 2 (x - min)/(max - min) - 1. A constant
// column maps to all zeros. Idempotent for columns already spanning [-1, 1].
std::vector<double> normalize_numeric(const std::vector<double>& raw_column);

// Loads a CSV with a header row plus a JSON sidecar schema marking each
// column numeric or categorical:
//   {"columns": [{"name": "age", "type": "numeric"},
//                {"name": "sex", "type": "categorical", "domain_size": 2}]}
// Categorical cells hold integers in [1, k]; a missing domain_size is
// inferred as the column's distinct-value count. Numeric columns are
// normalized. Rows with missing cells are rejected with their row number.
Dataset load_dataset(const std::string& csv_path, const std::string& schema_path);

}  // namespace aldp
