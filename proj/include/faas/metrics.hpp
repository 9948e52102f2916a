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

// Group-fairness metrics from the eight permutation counts.
//
//   F_DP       = Pr(Yhat=1 | A=0)      / Pr(Yhat=1 | A=1)
//   F_EOd(y)   = Pr(Yhat=1 | A=0, Y=y) / Pr(Yhat=1 | A=1, Y=y)
//   F_EOp      = F_EOd(1)
//
// In kPaperFaithful mode every component is a count over n (#2+#4, #6+#8,
// #2, #6, #4, #8, each divided by n), so the probabilities are joint. In
// kConditional mode the denominators are the true conditioning groups.
// Ratios are kept as reduced fractions; a zero denominator marks the value
// undefined instead of failing.

#ifndef FAAS_METRICS_HPP_
#define FAAS_METRICS_HPP_

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>

#include "faas/errors.hpp"
#include "faas/permutation.hpp"

namespace faas {

enum class MetricMode { kPaperFaithful, kConditional };

inline std::string_view MetricModeName(MetricMode mode) {
  return mode == MetricMode::kPaperFaithful ? "paper_faithful" : "conditional";
}

inline MetricMode ParseMetricMode(std::string_view name) {
  if (name == "paper_faithful") return MetricMode::kPaperFaithful;
  if (name == "conditional") return MetricMode::kConditional;
  throw InputError("bad-argument", "unknown metric mode '" + std::string(name) + "'");
}

// Non-negative fraction in lowest terms. denominator == 0 means undefined.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  static Ratio Of(unsigned __int128 num, unsigned __int128 den) {
    if (den == 0) return Ratio{0, 0};
    if (num == 0) return Ratio{0, 1};
    unsigned __int128 a = num, b = den;
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    num /= a;
    den /= a;
    if ((num >> 64) != 0 || (den >> 64) != 0) {
      throw InputError("overflow", "ratio does not fit in 64 bits");
    }
    return Ratio{static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den)};
  }

  bool defined() const { return denominator != 0; }
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// (a/b) / (c/d) = (a d) / (b c); undefined when any denominator vanishes.
inline Ratio Quotient(const Ratio& top, const Ratio& bottom) {
  if (!top.defined() || !bottom.defined() || bottom.numerator == 0) return Ratio{0, 0};
  return Ratio::Of(static_cast<unsigned __int128>(top.numerator) * bottom.denominator,
                   static_cast<unsigned __int128>(top.denominator) * bottom.numerator);
}

struct FairnessComponents {
  Ratio yhat_a0;     // Pr(Yhat | A=0)
  Ratio yhat_a1;     // Pr(Yhat | A=1)
  Ratio yhat_a0_y0;  // Pr(Yhat | A=0, y=0)
  Ratio yhat_a1_y0;  // Pr(Yhat | A=1, y=0)
  Ratio yhat_a0_y1;  // Pr(Yhat | A=0, y=1)
  Ratio yhat_a1_y1;  // Pr(Yhat | A=1, y=1)

  std::array<std::pair<std::string_view, Ratio>, 6> Named() const {
    return {{{"pr_yhat_a0", yhat_a0},
             {"pr_yhat_a1", yhat_a1},
             {"pr_yhat_a0_y0", yhat_a0_y0},
             {"pr_yhat_a1_y0", yhat_a1_y0},
             {"pr_yhat_a0_y1", yhat_a0_y1},
             {"pr_yhat_a1_y1", yhat_a1_y1}}};
  }
  friend bool operator==(const FairnessComponents&, const FairnessComponents&) = default;
};

struct FairnessMetrics {
  MetricMode mode = MetricMode::kPaperFaithful;
  PermutationCounts counts;
  FairnessComponents components;
  Ratio demographic_parity;
  Ratio equalised_odds_y0;
  Ratio equalised_odds_y1;
  Ratio equal_opportunity;
};

inline void RequireCountFits(const PermutationCounts& counts) {
  for (std::uint64_t c : counts.values) {
    if (c > 0xffffffffull) throw InputError("overflow", "count exceeds 2^32 - 1");
  }
}

// Joint components over n, one per row of the permutation/metric table.
inline FairnessComponents ComputeComponents(const PermutationCounts& counts, std::uint64_t n) {
  if (n == 0) throw InputError("bad-argument", "n must be at least 1");
  RequireCountFits(counts);
  auto c = [&](int k) { return static_cast<unsigned __int128>(counts.at(k)); };
  return FairnessComponents{
      Ratio::Of(c(2) + c(4), n), Ratio::Of(c(6) + c(8), n), Ratio::Of(c(2), n),
      Ratio::Of(c(6), n),        Ratio::Of(c(4), n),        Ratio::Of(c(8), n),
  };
}

// Components conditioned on the actual group (A, or A and Y).
inline FairnessComponents ComputeConditionalComponents(const PermutationCounts& counts) {
  RequireCountFits(counts);
  auto c = [&](int k) { return static_cast<unsigned __int128>(counts.at(k)); };
  return FairnessComponents{
      Ratio::Of(c(2) + c(4), c(1) + c(2) + c(3) + c(4)),
      Ratio::Of(c(6) + c(8), c(5) + c(6) + c(7) + c(8)),
      Ratio::Of(c(2), c(1) + c(2)),
      Ratio::Of(c(6), c(5) + c(6)),
      Ratio::Of(c(4), c(3) + c(4)),
      Ratio::Of(c(8), c(7) + c(8)),
  };
}

inline FairnessMetrics ComputeMetrics(const PermutationCounts& counts, MetricMode mode) {
  FairnessMetrics out;
  out.mode = mode;
  out.counts = counts;
  if (mode == MetricMode::kConditional) {
    out.components = ComputeConditionalComponents(counts);
  } else if (counts.total() != 0) {
    out.components = ComputeComponents(counts, counts.total());
  }
  const auto& c = out.components;
  out.demographic_parity = Quotient(c.yhat_a0, c.yhat_a1);
  out.equalised_odds_y0 = Quotient(c.yhat_a0_y0, c.yhat_a1_y0);
  out.equalised_odds_y1 = Quotient(c.yhat_a0_y1, c.yhat_a1_y1);
  out.equal_opportunity = out.equalised_odds_y1;
  return out;
}

}  // namespace faas

#endif  // FAAS_METRICS_HPP_
