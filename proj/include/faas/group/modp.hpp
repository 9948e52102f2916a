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

#ifndef FAAS_GROUP_MODP_HPP_
#define FAAS_GROUP_MODP_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "faas/bytes.hpp"
#include "faas/errors.hpp"
#include "faas/group/profile.hpp"
#include "faas/group/scalar.hpp"

namespace faas {

struct ModpElement {
  mpz_class value = 1;
  friend bool operator==(const ModpElement& a, const ModpElement& b) {
    return a.value == b.value;
  }
};

struct ModpParams {
  Profile profile;
  mpz_class p;
  mpz_class q;
  mpz_class g;
  std::string description;
  std::uint64_t dlog_bound;
};

// Order-q subgroup of Z_p^* with q | p - 1 (a DSA-like group). Used for the
// toy and test profiles, where discrete logs and tallies are small enough to
// brute-force.
class ModpGroup {
 public:
  using Element = ModpElement;

  explicit ModpGroup(ModpParams params)
      : params_(std::move(params)),
        scalars_(params_.q),
        width_((mpz_sizeinbase(params_.p.get_mpz_t(), 2) + 7) / 8) {
    SelfCheck();
  }

  Profile profile() const { return params_.profile; }
  const std::string& description() const { return params_.description; }
  const ScalarField& scalars() const { return scalars_; }
  const mpz_class& order() const { return params_.q; }
  const mpz_class& modulus() const { return params_.p; }
  std::uint64_t dlog_bound() const { return params_.dlog_bound; }
  std::size_t element_size() const { return width_; }

  Element Identity() const { return Element{1}; }
  Element Generator() const { return Element{params_.g}; }
  bool Equal(const Element& a, const Element& b) const { return a == b; }
  bool IsIdentity(const Element& a) const { return a.value == 1; }

  Element Exp(const Element& base, const Scalar& e) const {
    return Element{PowMod(base.value, e.value())};
  }
  Element ExpGen(const Scalar& e) const { return Exp(Generator(), e); }
  Element ExpGenBig(const mpz_class& e) const { return ExpGen(scalars_.Reduce(e)); }

  // g^s * base^e.
  Element ExpGenMul(const Scalar& s, const Element& base, const Scalar& e) const {
    return Mul(ExpGen(s), Exp(base, e));
  }

  Element Mul(const Element& a, const Element& b) const {
    mpz_class r = a.value * b.value;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), params_.p.get_mpz_t());
    return Element{std::move(r)};
  }
  Element Inv(const Element& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.value.get_mpz_t(), params_.p.get_mpz_t()) == 0) {
      throw InputError("malformed-element", "element not invertible mod p");
    }
    return Element{std::move(r)};
  }
  Element Div(const Element& a, const Element& b) const { return Mul(a, Inv(b)); }

  Bytes Encode(const Element& a) const { return ExportFixed(a.value, width_); }
  std::string ToHexString(const Element& a) const { return ToHex(Encode(a)); }

  // Rejects anything outside [1, p-1] or outside the order-q subgroup.
  Element Decode(std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != width_) {
      throw InputError("malformed-element", "element has wrong width");
    }
    mpz_class v = ImportBigEndian(bytes);
    if (v == 0 || v >= params_.p) {
      throw InputError("malformed-element", "element out of range");
    }
    if (PowMod(v, params_.q) != 1) {
      throw InputError("malformed-element", "element not in order-q subgroup");
    }
    return Element{std::move(v)};
  }
  Element FromHexString(std::string_view hex) const {
    return Decode(FromHex(hex, width_));
  }

 private:
  mpz_class PowMod(const mpz_class& base, const mpz_class& e) const {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), params_.p.get_mpz_t());
    return r;
  }

  void SelfCheck() const {
    auto fail = [](const std::string& what) {
      return VerificationError("group-self-check", what);
    };
    const mpz_class& p = params_.p;
    const mpz_class& q = params_.q;
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) throw fail("p is not prime");
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0) throw fail("q is not prime");
    if (mpz_divisible_p(mpz_class(p - 1).get_mpz_t(), q.get_mpz_t()) == 0) {
      throw fail("q does not divide p - 1");
    }
    if (params_.g <= 1 || params_.g >= p) throw fail("generator out of range");
    if (PowMod(params_.g, q) != 1) throw fail("generator order is not q");
  }

  ModpParams params_;
  ScalarField scalars_;
  std::size_t width_;
};

}  // namespace faas

#endif  // FAAS_GROUP_MODP_HPP_
