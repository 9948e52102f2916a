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

// Non-interactive proofs used by the protocol:
//
//  * Schnorr proof of knowledge of a row private key x for X = g^x.
//  * 1-out-of-8 disjunctive Chaum-Pedersen proof that a cryptogram
//    C = R^x * g^(p_k) encodes one of the eight permutation exponents.
//    Branch j proves that (g, X, R, C / g^(p_j)) is a DH tuple; seven
//    branches are simulated and the challenge shares sum to the transcript
//    hash, so the verifier cannot tell which branch is real.
//  * Schnorr signature over a table digest.
//
// All challenges are Fiat-Shamir hashes over a transcript that binds the
// protocol version, group profile, session ids, n, m, row index and every
// statement element, so a proof cannot be moved to another row or session.

#ifndef FAAS_ZKP_HPP_
#define FAAS_ZKP_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faas/bytes.hpp"
#include "faas/entropy.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"
#include "faas/permutation.hpp"

namespace faas {

inline constexpr std::string_view kProtocolVersion = "faas/1";

struct ProofContext {
  std::string session_id;
  // Empty for Phase I proofs; the audit session for Phase II proofs.
  std::string audit_session_id;
  std::uint64_t n = 0;
  unsigned m = 0;
  std::uint64_t row = 0;
};

enum class Or8Domain { kCandidate, kEncoding };

template <PrimeOrderGroup G>
struct SchnorrProof {
  typename G::Element commitment;
  Scalar response;
};

template <PrimeOrderGroup G>
struct Or8Branch {
  typename G::Element commitment_a;
  typename G::Element commitment_b;
  Scalar challenge_share;
  Scalar response;
};

template <PrimeOrderGroup G>
struct Or8Proof {
  std::array<Or8Branch<G>, kPermutationCount> branches;
};

template <PrimeOrderGroup G>
struct TableSignature {
  typename G::Element commitment;
  Scalar response;
};

// g^(p_k) for k = 1..8 at a given m.
template <PrimeOrderGroup G>
struct PermutationBases {
  unsigned m = 0;
  std::array<typename G::Element, kPermutationCount> powers;
};

template <PrimeOrderGroup G>
PermutationBases<G> MakePermutationBases(const G& group, unsigned m) {
  PermutationBases<G> out;
  out.m = m;
  for (int k = 1; k <= kPermutationCount; ++k) {
    out.powers[static_cast<std::size_t>(k - 1)] =
        group.ExpGenBig(ExponentForPermutation(PermutationIndex(k), m));
  }
  return out;
}

namespace zkp_detail {

template <PrimeOrderGroup G>
Transcript ContextTranscript(const G& group, std::string_view tag, const ProofContext& ctx) {
  Transcript t{std::string(tag)};
  t.AddString(kProtocolVersion)
      .AddString(ProfileName(group.profile()))
      .AddString(ctx.session_id)
      .AddString(ctx.audit_session_id)
      .AddU64(ctx.n)
      .AddU64(ctx.m)
      .AddU64(ctx.row);
  return t;
}

inline std::string_view Or8Tag(Or8Domain domain) {
  return domain == Or8Domain::kCandidate ? "faas/1/or8/candidate" : "faas/1/or8/encoding";
}

inline constexpr std::string_view kKeyOwnershipTag = "faas/1/key-ownership";
inline constexpr std::string_view kSignatureTag = "faas/1/table-signature";

template <PrimeOrderGroup G>
Scalar Or8Challenge(const G& group, Or8Domain domain, const ProofContext& ctx,
                    const typename G::Element& X, const typename G::Element& R,
                    const typename G::Element& C, const Or8Proof<G>& proof) {
  Transcript t = ContextTranscript(group, Or8Tag(domain), ctx);
  t.AddElement(group, X).AddElement(group, R).AddElement(group, C);
  for (const auto& b : proof.branches) {
    t.AddElement(group, b.commitment_a).AddElement(group, b.commitment_b);
  }
  return t.Challenge(group);
}

}  // namespace zkp_detail

template <PrimeOrderGroup G>
SchnorrProof<G> ProveKeyOwnership(const G& group, const ProofContext& ctx, const Scalar& x,
                                  const typename G::Element& X, EntropySource& rng) {
  const ScalarField& f = group.scalars();
  const Scalar w = f.RandomNonZero(rng);
  SchnorrProof<G> proof{group.ExpGen(w), Scalar()};
  Transcript t = zkp_detail::ContextTranscript(group, zkp_detail::kKeyOwnershipTag, ctx);
  t.AddElement(group, X).AddElement(group, proof.commitment);
  const Scalar c = t.Challenge(group);
  proof.response = f.Add(w, f.Mul(c, x));
  return proof;
}

// Checks g^response = commitment * X^challenge.
template <PrimeOrderGroup G>
bool VerifyKeyOwnership(const G& group, const ProofContext& ctx, const typename G::Element& X,
                        const SchnorrProof<G>& proof) {
  const ScalarField& f = group.scalars();
  Transcript t = zkp_detail::ContextTranscript(group, zkp_detail::kKeyOwnershipTag, ctx);
  t.AddElement(group, X).AddElement(group, proof.commitment);
  const Scalar c = t.Challenge(group);
  return group.Equal(group.ExpGenMul(proof.response, X, f.Neg(c)), proof.commitment);
}

template <PrimeOrderGroup G>
Or8Proof<G> ProveOr8(const G& group, const PermutationBases<G>& bases, Or8Domain domain,
                     const ProofContext& ctx, const Scalar& x, const typename G::Element& X,
                     const typename G::Element& R, const typename G::Element& C,
                     PermutationIndex selected, EntropySource& rng) {
  if (bases.m != ctx.m) {
    throw InputError("bad-argument", "permutation bases built for a different m");
  }
  if (!group.Equal(group.ExpGen(x), X) ||
      !group.Equal(group.Mul(group.Exp(R, x), bases.powers[selected.offset()]), C)) {
    throw InputError("witness-mismatch", "cryptogram does not match the witness");
  }
  const ScalarField& f = group.scalars();
  Or8Proof<G> proof;
  const Scalar w = f.RandomNonZero(rng);
  Scalar simulated_sum = f.FromUint(0);
  for (std::size_t j = 0; j < proof.branches.size(); ++j) {
    auto& b = proof.branches[j];
    if (j == selected.offset()) {
      b.commitment_a = group.ExpGen(w);
      b.commitment_b = group.Exp(R, w);
      continue;
    }
    b.challenge_share = f.Random(rng);
    b.response = f.Random(rng);
    const auto shifted = group.Div(C, bases.powers[j]);
    b.commitment_a = group.ExpGenMul(b.response, X, b.challenge_share);
    b.commitment_b = group.Mul(group.Exp(R, b.response), group.Exp(shifted, b.challenge_share));
    simulated_sum = f.Add(simulated_sum, b.challenge_share);
  }
  const Scalar c = zkp_detail::Or8Challenge(group, domain, ctx, X, R, C, proof);
  auto& real = proof.branches[selected.offset()];
  real.challenge_share = f.Sub(c, simulated_sum);
  real.response = f.Sub(w, f.Mul(real.challenge_share, x));
  return proof;
}

// Verifier side never learns the selected branch: it checks every branch
// a_j = g^r_j X^c_j, b_j = R^r_j (C / g^p_j)^c_j and that sum c_j equals
// the transcript challenge.
template <PrimeOrderGroup G>
bool VerifyOr8(const G& group, const PermutationBases<G>& bases, Or8Domain domain,
               const ProofContext& ctx, const typename G::Element& X,
               const typename G::Element& R, const typename G::Element& C,
               const Or8Proof<G>& proof) {
  if (bases.m != ctx.m) return false;
  const ScalarField& f = group.scalars();
  Scalar share_sum = f.FromUint(0);
  for (std::size_t j = 0; j < proof.branches.size(); ++j) {
    const auto& b = proof.branches[j];
    const auto shifted = group.Div(C, bases.powers[j]);
    if (!group.Equal(group.ExpGenMul(b.response, X, b.challenge_share), b.commitment_a)) {
      return false;
    }
    if (!group.Equal(group.Mul(group.Exp(R, b.response), group.Exp(shifted, b.challenge_share)),
                     b.commitment_b)) {
      return false;
    }
    share_sum = f.Add(share_sum, b.challenge_share);
  }
  return share_sum == zkp_detail::Or8Challenge(group, domain, ctx, X, R, C, proof);
}

template <PrimeOrderGroup G>
TableSignature<G> SignTable(const G& group, const Scalar& signing_key,
                            std::span<const std::uint8_t> table_digest, EntropySource& rng) {
  const ScalarField& f = group.scalars();
  const Scalar w = f.RandomNonZero(rng);
  TableSignature<G> sig{group.ExpGen(w), Scalar()};
  Transcript t{std::string(zkp_detail::kSignatureTag)};
  t.AddString(kProtocolVersion)
      .AddString(ProfileName(group.profile()))
      .AddElement(group, group.ExpGen(signing_key))
      .AddElement(group, sig.commitment)
      .Add(Bytes(table_digest.begin(), table_digest.end()));
  sig.response = f.Add(w, f.Mul(t.Challenge(group), signing_key));
  return sig;
}

template <PrimeOrderGroup G>
bool VerifyTableSignature(const G& group, const typename G::Element& signer,
                          std::span<const std::uint8_t> table_digest,
                          const TableSignature<G>& sig) {
  Transcript t{std::string(zkp_detail::kSignatureTag)};
  t.AddString(kProtocolVersion)
      .AddString(ProfileName(group.profile()))
      .AddElement(group, signer)
      .AddElement(group, sig.commitment)
      .Add(Bytes(table_digest.begin(), table_digest.end()));
  const Scalar c = t.Challenge(group);
  return group.Equal(group.ExpGenMul(sig.response, signer, group.scalars().Neg(c)),
                     sig.commitment);
}

}  // namespace faas

#endif  // FAAS_ZKP_HPP_
