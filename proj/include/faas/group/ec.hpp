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

#ifndef FAAS_GROUP_EC_HPP_
#define FAAS_GROUP_EC_HPP_

#include <gmpxx.h>
#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

#include "faas/bytes.hpp"
#include "faas/errors.hpp"
#include "faas/group/profile.hpp"
#include "faas/group/scalar.hpp"

namespace faas {
namespace ec_detail {

inline const EC_GROUP* P256() {
  // Intentionally never freed; shared by every element for the process.
  static const EC_GROUP* group = [] {
    EC_GROUP* g = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
    if (g == nullptr) throw IoError("crypto-failure", "P-256 unavailable");
    return g;
  }();
  return group;
}

inline BN_CTX* ThreadContext() {
  struct Holder {
    BN_CTX* ctx = BN_CTX_new();
    ~Holder() { BN_CTX_free(ctx); }
  };
  thread_local Holder holder;
  return holder.ctx;
}

struct BnFree {
  void operator()(BIGNUM* b) const { BN_clear_free(b); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnFree>;

inline BnPtr ToBn(const mpz_class& v) {
  Bytes bytes = ExportFixed(v, (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1);
  return BnPtr(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
}

inline mpz_class FromBn(const BIGNUM* b) {
  Bytes bytes(static_cast<std::size_t>(BN_num_bytes(b)));
  BN_bn2bin(b, bytes.data());
  return ImportBigEndian(bytes);
}

inline void Check(int ok, const char* what) {
  if (ok != 1) throw IoError("crypto-failure", what);
}

}  // namespace ec_detail

// Value-semantic owner of a P-256 point. Default-constructed elements are
// the point at infinity.
class EcElement {
 public:
  EcElement() : point_(EC_POINT_new(ec_detail::P256())) {
    if (!point_) throw IoError("crypto-failure", "EC_POINT_new failed");
  }
  EcElement(const EcElement& other)
      : point_(EC_POINT_dup(other.point_.get(), ec_detail::P256())) {}
  EcElement(EcElement&&) noexcept = default;
  EcElement& operator=(const EcElement& other) {
    if (this == &other) return *this;
    if (!point_) {
      point_.reset(EC_POINT_dup(other.point_.get(), ec_detail::P256()));
    } else {
      ec_detail::Check(EC_POINT_copy(point_.get(), other.point_.get()), "EC_POINT_copy");
    }
    return *this;
  }
  EcElement& operator=(EcElement&&) noexcept = default;

  EC_POINT* get() { return point_.get(); }
  const EC_POINT* get() const { return point_.get(); }

 private:
  struct Free {
    void operator()(EC_POINT* p) const { EC_POINT_free(p); }
  };
  std::unique_ptr<EC_POINT, Free> point_;
};

// NIST P-256 (an ECDSA-like group, cofactor 1). The production profile.
class EcGroup {
 public:
  using Element = EcElement;

  EcGroup() : scalars_(ec_detail::FromBn(EC_GROUP_get0_order(ec_detail::P256()))) {
    SelfCheck();
  }

  Profile profile() const { return Profile::kProduction; }
  const std::string& description() const { return description_; }
  const ScalarField& scalars() const { return scalars_; }
  const mpz_class& order() const { return scalars_.order(); }
  std::uint64_t dlog_bound() const { return 0; }
  std::size_t element_size() const { return kWidth; }

  Element Identity() const { return Element(); }
  Element Generator() const {
    Element out;
    ec_detail::Check(EC_POINT_copy(out.get(), EC_GROUP_get0_generator(ec_detail::P256())),
                     "EC_POINT_copy");
    return out;
  }
  bool Equal(const Element& a, const Element& b) const {
    return EC_POINT_cmp(ec_detail::P256(), a.get(), b.get(), ec_detail::ThreadContext()) == 0;
  }
  bool IsIdentity(const Element& a) const {
    return EC_POINT_is_at_infinity(ec_detail::P256(), a.get()) == 1;
  }

  Element Exp(const Element& base, const Scalar& e) const {
    Element out;
    auto bn = ec_detail::ToBn(e.value());
    ec_detail::Check(EC_POINT_mul(ec_detail::P256(), out.get(), nullptr, base.get(), bn.get(),
                                  ec_detail::ThreadContext()),
                     "EC_POINT_mul");
    return out;
  }
  Element ExpGen(const Scalar& e) const {
    Element out;
    auto bn = ec_detail::ToBn(e.value());
    ec_detail::Check(EC_POINT_mul(ec_detail::P256(), out.get(), bn.get(), nullptr, nullptr,
                                  ec_detail::ThreadContext()),
                     "EC_POINT_mul");
    return out;
  }
  Element ExpGenBig(const mpz_class& e) const { return ExpGen(scalars_.Reduce(e)); }

  // g^s * base^e as one double-scalar multiplication.
  Element ExpGenMul(const Scalar& s, const Element& base, const Scalar& e) const {
    Element out;
    auto bs = ec_detail::ToBn(s.value());
    auto be = ec_detail::ToBn(e.value());
    ec_detail::Check(EC_POINT_mul(ec_detail::P256(), out.get(), bs.get(), base.get(), be.get(),
                                  ec_detail::ThreadContext()),
                     "EC_POINT_mul");
    return out;
  }

  Element Mul(const Element& a, const Element& b) const {
    Element out;
    ec_detail::Check(EC_POINT_add(ec_detail::P256(), out.get(), a.get(), b.get(),
                                  ec_detail::ThreadContext()),
                     "EC_POINT_add");
    return out;
  }
  Element Inv(const Element& a) const {
    Element out(a);
    ec_detail::Check(EC_POINT_invert(ec_detail::P256(), out.get(), ec_detail::ThreadContext()),
                     "EC_POINT_invert");
    return out;
  }
  Element Div(const Element& a, const Element& b) const { return Mul(a, Inv(b)); }

  // SEC1 compressed form; the identity is 33 zero bytes.
  Bytes Encode(const Element& a) const {
    Bytes out(kWidth, 0);
    if (IsIdentity(a)) return out;
    std::size_t len = EC_POINT_point2oct(ec_detail::P256(), a.get(), POINT_CONVERSION_COMPRESSED,
                                         out.data(), out.size(), ec_detail::ThreadContext());
    if (len != kWidth) throw IoError("crypto-failure", "point encoding failed");
    return out;
  }
  std::string ToHexString(const Element& a) const { return ToHex(Encode(a)); }

  Element Decode(std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != kWidth) {
      throw InputError("malformed-element", "element has wrong width");
    }
    Element out;
    if (std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; })) {
      return out;
    }
    if (bytes[0] != 0x02 && bytes[0] != 0x03) {
      throw InputError("malformed-element", "not a compressed point");
    }
    if (EC_POINT_oct2point(ec_detail::P256(), out.get(), bytes.data(), bytes.size(),
                           ec_detail::ThreadContext()) != 1) {
      throw InputError("malformed-element", "point not on curve");
    }
    // Round trip pins a single canonical encoding per point.
    if (Encode(out) != Bytes(bytes.begin(), bytes.end())) {
      throw InputError("malformed-element", "non-canonical point encoding");
    }
    return out;
  }
  Element FromHexString(std::string_view hex) const {
    return Decode(FromHex(hex, kWidth));
  }

 private:
  static constexpr std::size_t kWidth = 33;

  void SelfCheck() const {
    auto order_bn = ec_detail::ToBn(order());
    if (BN_check_prime(order_bn.get(), ec_detail::ThreadContext(), nullptr) != 1) {
      throw VerificationError("group-self-check", "curve order is not prime");
    }
    if (scalars_.bits() < 250) {
      throw VerificationError("group-self-check", "production order below 250 bits");
    }
    Element check;
    ec_detail::Check(EC_POINT_mul(ec_detail::P256(), check.get(), order_bn.get(), nullptr,
                                  nullptr, ec_detail::ThreadContext()),
                     "EC_POINT_mul");
    if (!IsIdentity(check)) {
      throw VerificationError("group-self-check", "generator order is not q");
    }
  }

  ScalarField scalars_;
  std::string description_ = "NIST P-256 (prime256v1), SEC1 compressed points, v1";
};

}  // namespace faas

#endif  // FAAS_GROUP_EC_HPP_
