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
#include <fstream>
#include <string>
#include <vector>

namespace aldp {

// Shortest stable textual form of a double that round-trips (17 significant
// digits, C locale). Used everywhere a double reaches a CSV cell so outputs
// stay byte-identical across runs.
std::string format_double(double value);

// RFC 4180 writer: CRLF record separators, quoting only where required.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void write_row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
};

// Minimal RFC 4180 reader; returns rows of unquoted cells. Handles quoted
// cells with embedded separators/quotes and both LF and CRLF input.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace aldp
