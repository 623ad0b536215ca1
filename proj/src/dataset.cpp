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

#include "aldp/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "aldp/csv.hpp"
#include "aldp/error.hpp"

namespace aldp {

std::vector<double> normalize_numeric(const std::vector<double>& raw_column) {
  if (raw_column.empty()) throw Error("cannot normalize an empty column");
  double lo = raw_column[0], hi = raw_column[0];
  for (double v : raw_column) {
    if (!std::isfinite(v)) throw NonFiniteInput("non-finite value in numeric column");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(raw_column.size(), 0.0);
  if (hi == lo) return out;  // constant column maps to zeros
  const double span = hi - lo;
  for (size_t i = 0; i < raw_column.size(); ++i) {
    out[i] = 2.0 * (raw_column[i] - lo) / span - 1.0;
  }
  return out;
}

namespace {

struct ColumnSchema {
  std::string name;
  bool categorical = false;
  uint32_t domain_size = 0;  // 0 means infer
};

std::vector<ColumnSchema> load_schema(const std::string& schema_path) {
  std::ifstream in(schema_path);
  if (!in) throw Error("cannot open schema: " + schema_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.contains("columns") || !doc["columns"].is_array()) {
    throw ParseError("schema must contain a 'columns' array");
  }
  std::vector<ColumnSchema> columns;
  for (const auto& entry : doc["columns"]) {
    ColumnSchema column;
    column.name = entry.at("name").get<std::string>();
    const std::string type = entry.at("type").get<std::string>();
    if (type == "numeric") {
      column.categorical = false;
    } else if (type == "categorical") {
      column.categorical = true;
      if (entry.contains("domain_size")) column.domain_size = entry["domain_size"].get<uint32_t>();
    } else {
      throw ParseError("column type must be 'numeric' or 'categorical', got: " + type);
    }
    columns.push_back(column);
  }
  return columns;
}

double parse_double(const std::string& cell, size_t row) {
  try {
    size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size()) throw ParseError("");
    return v;
  } catch (...) {
    throw ParseError("row " + std::to_string(row) + ": bad numeric cell '" + cell + "'");
  }
}

long parse_int(const std::string& cell, size_t row) {
  try {
    size_t used = 0;
    long v = std::stol(cell, &used);
    if (used != cell.size()) throw ParseError("");
    return v;
  } catch (...) {
    throw ParseError("row " + std::to_string(row) + ": bad categorical cell '" + cell + "'");
  }
}

}  // namespace

Dataset load_dataset(const std::string& csv_path, const std::string& schema_path) {
  const std::vector<ColumnSchema> schema = load_schema(schema_path);
  const auto rows = read_csv(csv_path);
  if (rows.empty()) throw ParseError("empty CSV: " + csv_path);
  const auto& header = rows[0];
  if (header.size() != schema.size()) {
    throw ParseError("schema describes " + std::to_string(schema.size()) + " columns but CSV has " +
                     std::to_string(header.size()));
  }
  for (size_t c = 0; c < schema.size(); ++c) {
    if (header[c] != schema[c].name) {
      throw ParseError("column " + std::to_string(c) + " is '" + header[c] + "' but schema says '" +
                       schema[c].name + "'");
    }
  }

  const size_t n = rows.size() - 1;
  std::vector<std::vector<double>> numeric_columns;
  std::vector<std::vector<long>> categorical_columns;
  std::vector<uint32_t> declared_sizes;
  Dataset dataset;
  for (const ColumnSchema& column : schema) {
    if (column.categorical) {
      dataset.categorical_names.push_back(column.name);
      declared_sizes.push_back(column.domain_size);
      categorical_columns.emplace_back();
      categorical_columns.back().reserve(n);
    } else {
      dataset.numeric_names.push_back(column.name);
      numeric_columns.emplace_back();
      numeric_columns.back().reserve(n);
    }
  }

  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != schema.size()) {
      throw ParseError("row " + std::to_string(r) + ": expected " + std::to_string(schema.size()) +
                       " cells, got " + std::to_string(row.size()));
    }
    size_t num_idx = 0, cat_idx = 0;
    for (size_t c = 0; c < schema.size(); ++c) {
      if (row[c].empty()) {
        throw ParseError("row " + std::to_string(r) + ": missing value in column '" +
                         schema[c].name + "'");
      }
      if (schema[c].categorical) {
        categorical_columns[cat_idx++].push_back(parse_int(row[c], r));
      } else {
        numeric_columns[num_idx++].push_back(parse_double(row[c], r));
      }
    }
  }

  // Resolve categorical domains; file values are 1-based.
  for (size_t c = 0; c < categorical_columns.size(); ++c) {
    uint32_t k = declared_sizes[c];
    if (k == 0) {
      std::set<long> distinct(categorical_columns[c].begin(), categorical_columns[c].end());
      k = static_cast<uint32_t>(distinct.size());
    }
    if (k < 2) throw ParseError("categorical column '" + dataset.categorical_names[c] +
                                "' needs a domain of at least 2");
    for (size_t r = 0; r < categorical_columns[c].size(); ++r) {
      const long v = categorical_columns[c][r];
      if (v < 1 || v > static_cast<long>(k)) {
        throw ParseError("row " + std::to_string(r + 1) + ": value " + std::to_string(v) +
                         " outside domain [1," + std::to_string(k) + "] in column '" +
                         dataset.categorical_names[c] + "'");
      }
    }
    dataset.domain_sizes.push_back(k);
  }

  // Normalize numeric columns and transpose both kinds into rows.
  for (auto& column : numeric_columns) column = normalize_numeric(column);
  dataset.numeric.assign(n, std::vector<double>(numeric_columns.size()));
  for (size_t c = 0; c < numeric_columns.size(); ++c) {
    for (size_t r = 0; r < n; ++r) dataset.numeric[r][c] = numeric_columns[c][r];
  }
  dataset.categorical.assign(n, std::vector<uint32_t>(categorical_columns.size()));
  for (size_t c = 0; c < categorical_columns.size(); ++c) {
    for (size_t r = 0; r < n; ++r) {
      dataset.categorical[r][c] = static_cast<uint32_t>(categorical_columns[c][r] - 1);
    }
  }
  return dataset;
}

}  // namespace aldp
