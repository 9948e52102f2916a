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

#include <gtest/gtest.h>

#include "support/test_support.hpp"

namespace faas {
namespace {

// One row's statement: X = g^x, R = g^y, C = R^x g^(p_k).
template <class G>
struct Statement {
  ProofContext ctx;
  Scalar x;
  typename G::Element X, R, C;
  PermutationIndex k{1};
  PermutationBases<G> bases;
};

template <class G>
Statement<G> MakeStatement(const G& g, EntropySource& rng, int k, std::uint64_t n = 5,
                           std::uint64_t row = 2) {
  Statement<G> s;
  s.ctx = ProofContext{"session-a", "", n, TallyBits(n), row};
  s.x = RandomScalar(g, rng);
  s.X = g.ExpGen(s.x);
  s.R = g.ExpGen(RandomScalar(g, rng));
  s.k = PermutationIndex(k);
  s.bases = MakePermutationBases(g, s.ctx.m);
  s.C = g.Mul(g.Exp(s.R, s.x), s.bases.powers[s.k.offset()]);
  return s;
}

template <class G>
class ZkpTest : public ::testing::Test {
 protected:
  const G& group() const {
    if constexpr (std::is_same_v<G, EcGroup>) {
      return ProductionGroup();
    } else {
      return TestGroup();
    }
  }
};

using Groups = ::testing::Types<ModpGroup, EcGroup>;
TYPED_TEST_SUITE(ZkpTest, Groups);

TYPED_TEST(ZkpTest, SchnorrCompletenessAndBinding) {
  const auto& g = this->group();
  SeededEntropy rng(21);
  const auto s = MakeStatement(g, rng, 1);
  const auto proof = ProveKeyOwnership(g, s.ctx, s.x, s.X, rng);
  EXPECT_TRUE(VerifyKeyOwnership(g, s.ctx, s.X, proof));

  ProofContext other_row = s.ctx;
  other_row.row += 1;
  EXPECT_FALSE(VerifyKeyOwnership(g, other_row, s.X, proof));
  ProofContext other_session = s.ctx;
  other_session.session_id = "session-b";
  EXPECT_FALSE(VerifyKeyOwnership(g, other_session, s.X, proof));

  const auto X2 = g.ExpGen(RandomScalar(g, rng));
  EXPECT_FALSE(VerifyKeyOwnership(g, s.ctx, X2, proof));

  auto bumped = proof;
  bumped.response = g.scalars().Add(bumped.response, g.scalars().FromUint(1));
  EXPECT_FALSE(VerifyKeyOwnership(g, s.ctx, s.X, bumped));
}

TYPED_TEST(ZkpTest, SchnorrRejectsRandomProofs) {
  const auto& g = this->group();
  SeededEntropy rng(22);
  const auto s = MakeStatement(g, rng, 1);
  const int trials = std::is_same_v<TypeParam, EcGroup> ? 200 : 1000;
  for (int i = 0; i < trials; ++i) {
    SchnorrProof<TypeParam> p{g.ExpGen(RandomScalar(g, rng)), g.scalars().Random(rng)};
    ASSERT_FALSE(VerifyKeyOwnership(g, s.ctx, s.X, p));
  }
}

TYPED_TEST(ZkpTest, Or8CompletenessForEveryBranch) {
  const auto& g = this->group();
  SeededEntropy rng(23);
  for (int k = 1; k <= 8; ++k) {
    const auto s = MakeStatement(g, rng, k);
    for (Or8Domain d : {Or8Domain::kCandidate, Or8Domain::kEncoding}) {
      const auto proof = ProveOr8(g, s.bases, d, s.ctx, s.x, s.X, s.R, s.C, s.k, rng);
      EXPECT_TRUE(VerifyOr8(g, s.bases, d, s.ctx, s.X, s.R, s.C, proof)) << "k=" << k;
      // Simulated branches satisfy their equations by construction.
      for (std::size_t j = 0; j < 8; ++j) {
        const auto& b = proof.branches[j];
        EXPECT_TRUE(g.Equal(g.ExpGenMul(b.response, s.X, b.challenge_share), b.commitment_a));
        const auto shifted = g.Div(s.C, s.bases.powers[j]);
        EXPECT_TRUE(g.Equal(g.Mul(g.Exp(s.R, b.response), g.Exp(shifted, b.challenge_share)),
                            b.commitment_b));
      }
    }
  }
}

TYPED_TEST(ZkpTest, Or8Tampering) {
  const auto& g = this->group();
  SeededEntropy rng(24);
  const auto s = MakeStatement(g, rng, 4);
  const auto proof =
      ProveOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.x, s.X, s.R, s.C, s.k, rng);
  ASSERT_TRUE(VerifyOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.X, s.R, s.C, proof));

  // C shifted off the lattice by g.
  EXPECT_FALSE(VerifyOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.X, s.R,
                         g.Mul(s.C, g.Generator()), proof));
  // Challenge share perturbed.
  for (std::size_t j = 0; j < 8; ++j) {
    auto bad = proof;
    bad.branches[j].challenge_share =
        g.scalars().Add(bad.branches[j].challenge_share, g.scalars().FromUint(1));
    EXPECT_FALSE(VerifyOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.X, s.R, s.C, bad));
  }
  // Wrong m.
  ProofContext wrong_m = s.ctx;
  wrong_m.m += 1;
  const auto wrong_bases = MakePermutationBases(g, wrong_m.m);
  EXPECT_FALSE(VerifyOr8(g, wrong_bases, Or8Domain::kCandidate, wrong_m, s.X, s.R, s.C, proof));
  ProofContext same_ctx_wrong_bases = s.ctx;
  EXPECT_FALSE(VerifyOr8(g, wrong_bases, Or8Domain::kCandidate, same_ctx_wrong_bases, s.X, s.R,
                         s.C, proof));
  // Transplanted to another row's statement.
  const auto other = MakeStatement(g, rng, 4, 5, 3);
  EXPECT_FALSE(
      VerifyOr8(g, other.bases, Or8Domain::kCandidate, other.ctx, other.X, other.R, other.C, proof));
  // Same statement, different row index or session.
  ProofContext other_row = s.ctx;
  other_row.row = 0;
  EXPECT_FALSE(VerifyOr8(g, s.bases, Or8Domain::kCandidate, other_row, s.X, s.R, s.C, proof));
  ProofContext other_audit = s.ctx;
  other_audit.audit_session_id = "audit-x";
  EXPECT_FALSE(VerifyOr8(g, s.bases, Or8Domain::kCandidate, other_audit, s.X, s.R, s.C, proof));
  // Domain separation between candidate and encoding proofs.
  EXPECT_FALSE(VerifyOr8(g, s.bases, Or8Domain::kEncoding, s.ctx, s.X, s.R, s.C, proof));
}

TYPED_TEST(ZkpTest, Or8ProverSelfChecksWitness) {
  const auto& g = this->group();
  SeededEntropy rng(25);
  const auto s = MakeStatement(g, rng, 2);
  try {
    ProveOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.x, s.X, s.R, s.C, PermutationIndex(3),
             rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "witness-mismatch");
  }
  EXPECT_THROW(PermutationIndex(0), Error);
  EXPECT_THROW(PermutationIndex(9), Error);
}

TYPED_TEST(ZkpTest, TableSignature) {
  const auto& g = this->group();
  SeededEntropy rng(26);
  const Scalar sk = RandomScalar(g, rng);
  const auto pk = g.ExpGen(sk);
  Digest digest = Sha256Of("table body");
  const auto sig = SignTable(g, sk, digest, rng);
  EXPECT_TRUE(VerifyTableSignature(g, pk, digest, sig));
  Digest flipped = digest;
  flipped[7] ^= 0x10;
  EXPECT_FALSE(VerifyTableSignature(g, pk, flipped, sig));
  const auto other_pk = g.ExpGen(RandomScalar(g, rng));
  EXPECT_FALSE(VerifyTableSignature(g, other_pk, digest, sig));
}

// The serialized proof must not carry the selected branch in any field, and
// per-branch field statistics must not depend on it.
TEST(Or8Hiding, NoFieldRevealsSelectedBranch) {
  const auto& g = TestGroup();
  SeededEntropy rng(27);
  const int trials = 40;
  // mean of (challenge_share / q) per branch position, by selected k
  std::array<std::array<double, 8>, 8> mean{};
  for (int k = 1; k <= 8; ++k) {
    for (int t = 0; t < trials; ++t) {
      const auto s = MakeStatement(g, rng, k);
      const auto proof =
          ProveOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.x, s.X, s.R, s.C, s.k, rng);
      const Document doc = EncodeOr8(g, proof);
      ASSERT_EQ(doc.size(), 8u);
      for (const auto& branch : doc) {
        ASSERT_EQ(branch.size(), 4u);
        for (const auto& [key, value] : branch.items()) {
          ASSERT_TRUE(value.is_string()) << key;
          ASSERT_NE(value.get<std::string>(), std::to_string(k));
        }
      }
      for (std::size_t j = 0; j < 8; ++j) {
        const mpf_class share(proof.branches[j].challenge_share.value());
        mean[k - 1][j] += mpf_class(share / mpf_class(g.order())).get_d() / trials;
      }
    }
  }
  // Uniform shares have mean 1/2 with standard error ~0.29/sqrt(40) ~ 0.046.
  for (int k = 0; k < 8; ++k) {
    for (int j = 0; j < 8; ++j) {
      EXPECT_NEAR(mean[k][j], 0.5, 0.2) << "k=" << k + 1 << " branch " << j + 1;
    }
  }
}

TEST(Or8Hiding, VerifierNeverNeedsSelectedBranch) {
  // The verifier API takes no branch index; decoding a proof and verifying it
  // works without any side information.
  const auto& g = TestGroup();
  SeededEntropy rng(28);
  const auto s = MakeStatement(g, rng, 6);
  const auto proof =
      ProveOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.x, s.X, s.R, s.C, s.k, rng);
  const auto decoded = DecodeOr8(g, ParseDocument(Canonical(EncodeOr8(g, proof))));
  EXPECT_TRUE(VerifyOr8(g, s.bases, Or8Domain::kCandidate, s.ctx, s.X, s.R, s.C, decoded));
}

}  // namespace
}  // namespace faas
