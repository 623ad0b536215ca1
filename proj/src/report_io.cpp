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

#include "aldp/report_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "aldp/error.hpp"

namespace aldp {

namespace {

static_assert(std::endian::native == std::endian::little,
              "report files are little-endian; add byte swapping for this platform");

constexpr char kMagic[8] = {'A', 'L', 'D', 'P', 'R', 'P', 'T', '1'};

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError("truncated report file");
  return value;
}

uint8_t protocol_code(Protocol protocol) { return static_cast<uint8_t>(protocol); }

Protocol protocol_from_code(uint8_t code) {
  if (code > static_cast<uint8_t>(Protocol::opt_gm)) throw ParseError("bad protocol code");
  return static_cast<Protocol>(code);
}

}  // namespace

void write_reports(const std::string& path, const ProtocolParams& params,
                   const std::vector<CategoricalReport>& reports) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  put<uint8_t>(out, protocol_code(params.protocol));
  put<uint32_t>(out, params.k);
  put<uint32_t>(out, params.g);
  put<double>(out, params.budget.epsilon());
  put<double>(out, params.budget.delta());
  put<double>(out, params.p);
  put<double>(out, params.q);
  put<double>(out, params.p_star);
  put<double>(out, params.q_star);
  put<double>(out, params.sigma);
  put<uint64_t>(out, reports.size());

  const size_t packed_bytes = (params.k + 7) / 8;
  std::vector<uint8_t> packed(packed_bytes);
  for (const CategoricalReport& report : reports) {
    if (report.protocol != params.protocol) {
      throw MixedProtocolReports("report protocol differs from file header");
    }
    switch (params.protocol) {
      case Protocol::grr:
        put<uint32_t>(out, report.value);
        break;
      case Protocol::prr:
      case Protocol::sprr: {
        std::fill(packed.begin(), packed.end(), 0);
        for (uint32_t v = 0; v < params.k; ++v) {
          if (report.bits[v]) packed[v / 8] |= static_cast<uint8_t>(1u << (v % 8));
        }
        out.write(reinterpret_cast<const char*>(packed.data()), packed_bytes);
        break;
      }
      case Protocol::lh:
      case Protocol::olh:
        put<uint64_t>(out, report.hash_seed);
        put<uint16_t>(out, report.hashed);
        break;
      case Protocol::opt_gm:
        out.write(reinterpret_cast<const char*>(report.noisy.data()),
                  static_cast<std::streamsize>(sizeof(double) * params.k));
        break;
    }
  }
  if (!out) throw Error("write failed: " + path);
}

ReportFile read_reports(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("not a report file: " + path);
  }
  const Protocol protocol = protocol_from_code(get<uint8_t>(in));
  const uint32_t k = get<uint32_t>(in);
  const uint32_t g = get<uint32_t>(in);
  const double epsilon = get<double>(in);
  const double delta = get<double>(in);
  ReportFile file{ProtocolParams{protocol, k, PrivacyBudget(epsilon, delta)}, {}};
  file.params.p = get<double>(in);
  file.params.q = get<double>(in);
  file.params.p_star = get<double>(in);
  file.params.q_star = get<double>(in);
  file.params.g = g;
  file.params.sigma = get<double>(in);
  const uint64_t n = get<uint64_t>(in);

  const size_t packed_bytes = (k + 7) / 8;
  std::vector<uint8_t> packed(packed_bytes);
  file.reports.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    CategoricalReport report;
    report.protocol = protocol;
    switch (protocol) {
      case Protocol::grr:
        report.value = get<uint32_t>(in);
        break;
      case Protocol::prr:
      case Protocol::sprr: {
        in.read(reinterpret_cast<char*>(packed.data()), packed_bytes);
        if (!in) throw ParseError("truncated report file");
        report.bits.assign(k, 0);
        for (uint32_t v = 0; v < k; ++v) {
          report.bits[v] = (packed[v / 8] >> (v % 8)) & 1u;
        }
        break;
      }
      case Protocol::lh:
      case Protocol::olh:
        report.hash_seed = get<uint64_t>(in);
        report.hashed = get<uint16_t>(in);
        break;
      case Protocol::opt_gm: {
        report.noisy.resize(k);
        in.read(reinterpret_cast<char*>(report.noisy.data()),
                static_cast<std::streamsize>(sizeof(double) * k));
        if (!in) throw ParseError("truncated report file");
        break;
      }
    }
    file.reports.push_back(std::move(report));
  }
  return file;
}

}  // namespace aldp
