// Copyright 2026 The FaaS Authors
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

// Labeled samples as CSV (header "A,Y,Yhat", one 0/1 triple per line) and a
// seeded synthetic generator driven by per-permutation rates.

#ifndef FAAS_DATASET_HPP_
#define FAAS_DATASET_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "faas/errors.hpp"
#include "faas/permutation.hpp"

namespace faas {

inline constexpr std::string_view kCsvHeader = "A,Y,Yhat";

inline std::vector<LabeledSample> ParseCsv(std::istream& in) {
  std::vector<LabeledSample> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw InputError("malformed-csv", "line 1: expected header '" + std::string(kCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    auto bit = [&](char c) {
      if (c != '0' && c != '1') {
        throw InputError("malformed-csv", "line " + std::to_string(line_no) + ": '" + line +
                                              "' is not a 0/1 triple");
      }
      return c == '1';
    };
    if (line.size() != 5 || line[1] != ',' || line[3] != ',') {
      throw InputError("malformed-csv", "line " + std::to_string(line_no) + ": '" + line +
                                            "' is not a 0/1 triple");
    }
    out.push_back(LabeledSample{bit(line[0]), bit(line[2]), bit(line[4])});
  }
  if (!header_seen) throw InputError("malformed-csv", "missing header");
  if (out.empty()) throw InputError("no-samples", "no samples in data section");
  return out;
}

inline std::vector<LabeledSample> IngestCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("io-error", "cannot open " + path);
  return ParseCsv(in);
}

inline std::string FormatCsv(const std::vector<LabeledSample>& samples) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& s : samples) {
    out += s.a ? '1' : '0';
    out += ',';
    out += s.y ? '1' : '0';
    out += ',';
    out += s.yhat ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline void WriteCsv(const std::string& path, const std::vector<LabeledSample>& samples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("io-error", "cannot write " + path);
  out << FormatCsv(samples);
  if (!out) throw IoError("io-error", "write failed for " + path);
}

// Probability of each permutation #1..#8.
using PermutationRates = std::array<double, kPermutationCount>;

inline void RequireRates(const PermutationRates& rates) {
  double sum = 0;
  for (double r : rates) {
    if (!(r >= 0) || !std::isfinite(r)) throw InputError("bad-rates", "rates must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("bad-rates", "rates must sum to 1");
}

// Synthetic presets. None of them come from a real dataset.
inline PermutationRates PresetRates(std::string_view name) {
  if (name == "uniform") return {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125};
  // Equal treatment of both groups.
  if (name == "balanced") return {0.125, 0.0625, 0.125, 0.1875, 0.125, 0.0625, 0.125, 0.1875};
  // Group A=1 receives far fewer positive predictions.
  if (name == "skewed") return {0.20, 0.20, 0.10, 0.10, 0.15, 0.05, 0.15, 0.05};
  // Larger A=1 group with a moderate gap.
  if (name == "minority") return {0.08, 0.03, 0.05, 0.09, 0.30, 0.10, 0.15, 0.20};
  throw InputError("bad-argument", "unknown rate preset '" + std::string(name) + "'");
}

inline PermutationRates ParseRates(std::string_view text) {
  PermutationRates rates{};
  std::istringstream in{std::string(text)};
  std::string item;
  std::size_t k = 0;
  while (std::getline(in, item, ',')) {
    if (k >= rates.size()) throw InputError("bad-rates", "expected 8 comma-separated rates");
    try {
      std::size_t used = 0;
      rates[k] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad-rates", "'" + item + "' is not a number");
    }
    ++k;
  }
  if (k != rates.size()) throw InputError("bad-rates", "expected 8 comma-separated rates");
  RequireRates(rates);
  return rates;
}

inline std::vector<LabeledSample> GenSynthetic(std::uint64_t n, const PermutationRates& rates,
                                               std::uint64_t seed) {
  RequireRates(rates);
  std::mt19937_64 engine(seed);
  std::discrete_distribution<int> pick(rates.begin(), rates.end());
  std::vector<LabeledSample> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(DecodePermutation(PermutationIndex(pick(engine) + 1)));
  }
  return out;
}

}  // namespace faas

#endif  // FAAS_DATASET_HPP_
