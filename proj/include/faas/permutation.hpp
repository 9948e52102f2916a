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

#ifndef FAAS_PERMUTATION_HPP_
#define FAAS_PERMUTATION_HPP_

#include <gmpxx.h>

#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>

#include "faas/errors.hpp"

namespace faas {

inline constexpr int kPermutationCount = 8;

// One test-set sample: protected-group membership A, actual label Y and
// predicted label Yhat.
struct LabeledSample {
  bool a = false;
  bool y = false;
  bool yhat = false;
  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// Permutation number 1..8, i.e. 1 + the 3-bit value (A Y Yhat).
class PermutationIndex {
 public:
  explicit PermutationIndex(int k) : k_(k) {
    if (k < 1 || k > kPermutationCount) {
      throw InputError("bad-permutation", "permutation index " + std::to_string(k) +
                                              " outside 1..8");
    }
  }
  int value() const { return k_; }
  std::size_t offset() const { return static_cast<std::size_t>(k_ - 1); }
  friend bool operator==(PermutationIndex, PermutationIndex) = default;

 private:
  int k_;
};

inline PermutationIndex EncodeSample(const LabeledSample& s) {
  return PermutationIndex(1 + 4 * int{s.a} + 2 * int{s.y} + int{s.yhat});
}

inline LabeledSample DecodePermutation(PermutationIndex k) {
  const int bits = k.value() - 1;
  return LabeledSample{(bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
}

// Smallest m with 2^m > n.
inline unsigned TallyBits(std::uint64_t n) {
  if (n == 0) throw InputError("bad-argument", "sample count must be at least 1");
  return static_cast<unsigned>(std::bit_width(n));
}

// p_k = 2^((k-1) m).
inline mpz_class ExponentForPermutation(PermutationIndex k, unsigned m) {
  if (m == 0) throw InputError("bad-argument", "m must be at least 1");
  mpz_class out = 1;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(k.offset() * m));
  return out;
}

// Per-permutation tallies (a..h in permutation order #1..#8).
struct PermutationCounts {
  std::array<std::uint64_t, kPermutationCount> values{};

  std::uint64_t operator[](PermutationIndex k) const { return values[k.offset()]; }
  std::uint64_t& operator[](PermutationIndex k) { return values[k.offset()]; }
  // 1-based accessor mirroring the #1..#8 numbering.
  std::uint64_t at(int k) const { return (*this)[PermutationIndex(k)]; }

  std::uint64_t total() const {
    return std::accumulate(values.begin(), values.end(), std::uint64_t{0});
  }
  friend bool operator==(const PermutationCounts&, const PermutationCounts&) = default;
};

inline PermutationCounts DeclareCounts(std::span<const LabeledSample> samples) {
  PermutationCounts counts;
  for (const auto& s : samples) ++counts[EncodeSample(s)];
  return counts;
}

// sum_k counts_k * 2^((k-1) m): the exponent of the homomorphic product.
inline mpz_class TallyExponent(const PermutationCounts& counts, unsigned m) {
  mpz_class e = 0;
  for (int k = 1; k <= kPermutationCount; ++k) {
    e += ExponentForPermutation(PermutationIndex(k), m) *
         mpz_class(static_cast<unsigned long>(counts.at(k)));
  }
  return e;
}

}  // namespace faas

#endif  // FAAS_PERMUTATION_HPP_
