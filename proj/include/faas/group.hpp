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

// Prime-order group profiles and the group-generic helpers every protocol
// role shares: random scalars, Fiat-Shamir hashing and small discrete logs.

#ifndef FAAS_GROUP_HPP_
#define FAAS_GROUP_HPP_

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faas/bytes.hpp"
#include "faas/entropy.hpp"
#include "faas/errors.hpp"
#include "faas/group/ec.hpp"
#include "faas/group/modp.hpp"
#include "faas/group/profile.hpp"
#include "faas/group/scalar.hpp"

namespace faas {

template <class G>
concept PrimeOrderGroup = requires(const G& g, const typename G::Element& a, const Scalar& s,
                                   std::span<const std::uint8_t> bytes) {
  { g.profile() } -> std::same_as<Profile>;
  { g.scalars() } -> std::same_as<const ScalarField&>;
  { g.Identity() } -> std::same_as<typename G::Element>;
  { g.Generator() } -> std::same_as<typename G::Element>;
  { g.Exp(a, s) } -> std::same_as<typename G::Element>;
  { g.ExpGen(s) } -> std::same_as<typename G::Element>;
  { g.ExpGenMul(s, a, s) } -> std::same_as<typename G::Element>;
  { g.Mul(a, a) } -> std::same_as<typename G::Element>;
  { g.Div(a, a) } -> std::same_as<typename G::Element>;
  { g.Inv(a) } -> std::same_as<typename G::Element>;
  { g.Equal(a, a) } -> std::same_as<bool>;
  { g.Encode(a) } -> std::same_as<Bytes>;
  { g.Decode(bytes) } -> std::same_as<typename G::Element>;
  { g.dlog_bound() } -> std::same_as<std::uint64_t>;
};

// Parameter set version; bump whenever a profile constant changes.
inline constexpr int kGroupParamsVersion = 1;

// p = 23, q = 11, g = 2. Group-law tests only: q is too small for tallies.
inline const ModpGroup& ToyGroup() {
  static const ModpGroup group(ModpParams{
      Profile::kToy, mpz_class(23), mpz_class(11), mpz_class(2),
      "toy: order-11 subgroup of Z_23^*, g = 2, v1", 10});
  return group;
}

// q = 2^100 + 277, p = q * (2^59 + 208) + 1 (160 bits), g = 2^((p-1)/q).
// q > 2^96 keeps every tally exponent below q for m <= 12 (n <= 4095).
// Discrete logs up to 2^26 are brute-forced in tests.
inline const ModpGroup& TestGroup() {
  static const ModpGroup group(ModpParams{
      Profile::kTest,
      mpz_class("8000000000000d0000000008a80000000000e111", 16),
      mpz_class("10000000000000000000000115", 16),
      mpz_class("e51f70c39f541259261bfe0fe2cea89a517d7f9", 16),
      "test: order-(2^100+277) subgroup of Z_p^*, 160-bit p, dlog bound 2^26, v1",
      std::uint64_t{1} << 26});
  return group;
}

inline const EcGroup& ProductionGroup() {
  static const EcGroup group;
  return group;
}

// Runs `fn` with the (validated, cached) group object for `profile`.
template <class Fn>
decltype(auto) WithGroup(Profile profile, Fn&& fn) {
  switch (profile) {
    case Profile::kToy:
      return std::forward<Fn>(fn)(ToyGroup());
    case Profile::kTest:
      return std::forward<Fn>(fn)(TestGroup());
    case Profile::kProduction:
      break;
  }
  return std::forward<Fn>(fn)(ProductionGroup());
}

// Largest m with q > 2^(8m): the biggest sample count the profile can tally
// without the exponent wrapping is 2^m - 1.
template <PrimeOrderGroup G>
unsigned MaxTallyBits(const G& group) {
  return static_cast<unsigned>((group.scalars().bits() - 1) / 8);
}

template <PrimeOrderGroup G>
Scalar RandomScalar(const G& group, EntropySource& rng) {
  return group.scalars().RandomNonZero(rng);
}

// Length-prefixed byte stream fed to the challenge hash:
//   u64(len(tag)) || tag || for each part: u64(len(part)) || part
// Prefixing every field makes the encoding injective over part lists.
inline Bytes TranscriptBytes(std::string_view domain_tag, std::span<const Bytes> parts) {
  if (domain_tag.empty()) {
    throw InputError("bad-argument", "domain tag must be non-empty");
  }
  Bytes out;
  AppendU64(out, domain_tag.size());
  out.insert(out.end(), domain_tag.begin(), domain_tag.end());
  for (const Bytes& part : parts) {
    AppendU64(out, part.size());
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// SHA-256 under prefixes 0x00 and 0x01, concatenated to 512 bits and
// reduced mod q.
template <PrimeOrderGroup G>
Scalar HashToScalar(const G& group, std::string_view domain_tag, std::span<const Bytes> parts) {
  const Bytes stream = TranscriptBytes(domain_tag, parts);
  Bytes wide;
  for (std::uint8_t prefix : {std::uint8_t{0}, std::uint8_t{1}}) {
    Sha256 h;
    h.Update(std::span<const std::uint8_t>(&prefix, 1));
    h.Update(stream);
    Digest d = h.Finish();
    wide.insert(wide.end(), d.begin(), d.end());
  }
  return group.scalars().Reduce(ImportBigEndian(wide));
}

// Accumulates Fiat-Shamir transcript parts.
class Transcript {
 public:
  explicit Transcript(std::string domain_tag) : tag_(std::move(domain_tag)) {
    if (tag_.empty()) throw InputError("bad-argument", "domain tag must be non-empty");
  }

  Transcript& Add(Bytes part) {
    parts_.push_back(std::move(part));
    return *this;
  }
  Transcript& AddString(std::string_view s) { return Add(ToBytes(s)); }
  Transcript& AddU64(std::uint64_t v) {
    Bytes b;
    AppendU64(b, v);
    return Add(std::move(b));
  }
  template <PrimeOrderGroup G>
  Transcript& AddElement(const G& group, const typename G::Element& e) {
    return Add(group.Encode(e));
  }

  template <PrimeOrderGroup G>
  Scalar Challenge(const G& group) const {
    return HashToScalar(group, tag_, parts_);
  }

 private:
  std::string tag_;
  std::vector<Bytes> parts_;
};

// Smallest e in [0, bound] with g^e = target, by walking g^0, g^1, ...
// Only profiles with a non-zero dlog bound support this.
template <PrimeOrderGroup G>
std::optional<std::uint64_t> BruteForceDlog(const G& group, const typename G::Element& target,
                                            std::uint64_t bound) {
  if (bound > group.dlog_bound()) {
    throw InputError("dlog-bound-exceeded",
                     "bound " + std::to_string(bound) + " exceeds profile limit " +
                         std::to_string(group.dlog_bound()));
  }
  const auto g = group.Generator();
  auto acc = group.Identity();
  for (std::uint64_t e = 0;; ++e) {
    if (group.Equal(acc, target)) return e;
    if (e == bound) break;
    acc = group.Mul(acc, g);
  }
  return std::nullopt;
}

}  // namespace faas

#endif  // FAAS_GROUP_HPP_
