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

#ifndef FAAS_GROUP_SCALAR_HPP_
#define FAAS_GROUP_SCALAR_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "faas/bytes.hpp"
#include "faas/entropy.hpp"
#include "faas/errors.hpp"

namespace faas {

// Residue modulo the group order. Only ScalarField creates non-zero values,
// which keeps 0 <= value < q.
class Scalar {
 public:
  Scalar() = default;
  const mpz_class& value() const { return value_; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
  }

 private:
  friend class ScalarField;
  explicit Scalar(mpz_class v) : value_(std::move(v)) {}
  mpz_class value_ = 0;
};

// Big-endian, fixed-width export of a non-negative integer.
inline Bytes ExportFixed(const mpz_class& v, std::size_t width) {
  Bytes out(width, 0);
  std::size_t count = 0;
  Bytes tmp((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  if (count > width) {
    throw InputError("encoding-overflow", "integer wider than field width");
  }
  std::copy_n(tmp.begin(), count, out.begin() + static_cast<std::ptrdiff_t>(width - count));
  return out;
}

inline mpz_class ImportBigEndian(std::span<const std::uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

class ScalarField {
 public:
  explicit ScalarField(mpz_class order)
      : order_(std::move(order)),
        bits_(mpz_sizeinbase(order_.get_mpz_t(), 2)),
        width_((bits_ + 7) / 8) {}

  const mpz_class& order() const { return order_; }
  std::size_t bits() const { return bits_; }
  std::size_t byte_size() const { return width_; }

  Scalar Reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), order_.get_mpz_t());
    return Scalar(std::move(r));
  }
  Scalar FromUint(std::uint64_t v) const {
    return Reduce(mpz_class(static_cast<unsigned long>(v)));
  }

  Scalar Add(const Scalar& a, const Scalar& b) const { return Reduce(a.value() + b.value()); }
  Scalar Sub(const Scalar& a, const Scalar& b) const { return Reduce(a.value() - b.value()); }
  Scalar Mul(const Scalar& a, const Scalar& b) const { return Reduce(a.value() * b.value()); }
  Scalar Neg(const Scalar& a) const { return Reduce(-a.value()); }

  // Uniform in [0, q-1] by rejection sampling on bit-masked draws.
  Scalar Random(EntropySource& rng) const { return Sample(rng, false); }

  // Uniform in [1, q-1]; zero is rejected, never returned.
  Scalar RandomNonZero(EntropySource& rng) const { return Sample(rng, true); }

  Bytes Encode(const Scalar& s) const { return ExportFixed(s.value(), width_); }
  std::string ToHexString(const Scalar& s) const { return ToHex(Encode(s)); }

  Scalar Decode(std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != width_) {
      throw InputError("malformed-scalar", "scalar has wrong width");
    }
    mpz_class v = ImportBigEndian(bytes);
    if (v >= order_) {
      throw InputError("malformed-scalar", "scalar not reduced mod q");
    }
    return Scalar(std::move(v));
  }
  Scalar FromHexString(std::string_view hex) const {
    return Decode(FromHex(hex, width_));
  }

 private:
  Scalar Sample(EntropySource& rng, bool nonzero) const {
    Bytes buf(width_);
    const unsigned excess = static_cast<unsigned>(width_ * 8 - bits_);
    const std::uint8_t mask = static_cast<std::uint8_t>(0xff >> excess);
    for (;;) {
      rng.Fill(buf);
      buf[0] &= mask;
      mpz_class v = ImportBigEndian(buf);
      if (v >= order_) continue;
      if (nonzero && v == 0) continue;
      return Scalar(std::move(v));
    }
  }

  mpz_class order_;
  std::size_t bits_;
  std::size_t width_;
};

}  // namespace faas

#endif  // FAAS_GROUP_SCALAR_HPP_
