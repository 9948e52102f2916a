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

using testing::MakeHonestRun;
using testing::TestGeneratorPowHex;
using testing::TestElementHex;
using testing::ToyPow;

std::string KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

TEST(Permutations, EncodeSampleTable) {
  EXPECT_EQ(EncodeSample({false, false, false}).value(), 1);
  EXPECT_EQ(EncodeSample({false, false, true}).value(), 2);
  EXPECT_EQ(EncodeSample({false, true, true}).value(), 4);
  EXPECT_EQ(EncodeSample({true, true, false}).value(), 7);
  EXPECT_EQ(EncodeSample({true, true, true}).value(), 8);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_EQ(EncodeSample(DecodePermutation(PermutationIndex(k))).value(), k);
  }
}

TEST(Permutations, TallyBitsIsSmallestMWithPowerAboveN) {
  for (std::uint64_t n = 1; n < 5000; ++n) {
    const unsigned m = TallyBits(n);
    EXPECT_GT(std::uint64_t{1} << m, n);
    EXPECT_LE(std::uint64_t{1} << (m - 1), n);
  }
  EXPECT_EQ(TallyBits(3166), 12u);
  EXPECT_EQ(TallyBits(3), 2u);
  EXPECT_THROW(TallyBits(0), Error);
}

TEST(Permutations, ExponentForPermutation) {
  EXPECT_EQ(ExponentForPermutation(PermutationIndex(1), 7), 1);
  EXPECT_EQ(ExponentForPermutation(PermutationIndex(8), 12), mpz_class(1) << 84);
  EXPECT_EQ(mpz_class(1) << 84, mpz_class("19342813113834066795298816"));
  EXPECT_EQ(ExponentForPermutation(PermutationIndex(2), TallyBits(3166)), 4096);
  EXPECT_EQ(KindOf([] { PermutationIndex(9); }), "bad-permutation");
}

TEST(DeclareCounts, Examples) {
  std::vector<LabeledSample> s(3, LabeledSample{false, false, false});
  s.push_back({true, true, true});
  const auto c = DeclareCounts(s);
  EXPECT_EQ(c.values, (std::array<std::uint64_t, 8>{3, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(c.total(), 4u);
  const auto random = testing::RandomSamples(313, 4);
  EXPECT_EQ(DeclareCounts(random).total(), 313u);
  EXPECT_EQ(DeclareCounts(random).values, testing::PlainCounts(random));
}

TEST(GenerateKeypairs, ToyOracle) {
  const auto& g = ToyGroup();
  SeededEntropy rng(1);
  const auto keys = GenerateKeypairs(g, 3, rng);
  ASSERT_EQ(keys.size(), 3u);
  for (const auto& k : keys) {
    EXPECT_EQ(k.public_key.value.get_ui(), ToyPow(2, k.private_key.value().get_ui(), 23));
    EXPECT_FALSE(g.IsIdentity(k.public_key));
  }
  EXPECT_EQ(GenerateKeypairs(g, 1, rng).size(), 1u);
  EXPECT_EQ(KindOf([&] { GenerateKeypairs(g, 0, rng); }), "bad-argument");
}

TEST(ReconstructedKeys, SmallCases) {
  const auto& g = TestGroup();
  SeededEntropy rng(2);
  const auto X1 = g.ExpGen(RandomScalar(g, rng)), X2 = g.ExpGen(RandomScalar(g, rng));
  const std::vector<ModpElement> one = {X1};
  EXPECT_TRUE(g.IsIdentity(ReconstructedKeys<ModpGroup>(g, one)[0]));
  const std::vector<ModpElement> two = {X1, X2};
  const auto r = ReconstructedKeys<ModpGroup>(g, two);
  EXPECT_EQ(r[0], g.Inv(X2));
  EXPECT_EQ(r[1], X1);
  EXPECT_EQ(KindOf([&] { ReconstructedKeys<ModpGroup>(g, std::vector<ModpElement>{}); }),
            "bad-argument");
}

TEST(ReconstructedKeys, ToyExponentOracle) {
  const auto& g = ToyGroup();
  SeededEntropy rng(3);
  const auto keys = GenerateKeypairs(g, 5, rng);
  std::vector<ModpElement> publics;
  for (const auto& k : keys) publics.push_back(k.public_key);
  const auto r = ReconstructedKeys<ModpGroup>(g, publics);
  for (std::size_t i = 0; i < 5; ++i) {
    long long y = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      const long long x = static_cast<long long>(keys[j].private_key.value().get_ui());
      if (j < i) y += x;
      if (j > i) y -= x;
    }
    const std::uint64_t y_mod = static_cast<std::uint64_t>(((y % 11) + 11) % 11);
    EXPECT_EQ(r[i].value.get_ui(), ToyPow(2, y_mod, 23)) << "row " << i;
  }
}

TEST(Cancellation, ProductOfBlindingFactorsIsIdentity) {
  const auto& g = TestGroup();
  SeededEntropy rng(4);
  for (std::uint64_t n : {1, 2, 3, 7, 20}) {
    const auto keys = GenerateKeypairs(g, n, rng);
    std::vector<ModpElement> publics;
    for (const auto& k : keys) publics.push_back(k.public_key);
    const auto r = ReconstructedKeys<ModpGroup>(g, publics);
    auto acc = g.Identity();
    mpz_class sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc = g.Mul(acc, g.Exp(r[i], keys[i].private_key));
      mpz_class y = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j < i) y += keys[j].private_key.value();
        if (j > i) y -= keys[j].private_key.value();
      }
      sum += keys[i].private_key.value() * y;
    }
    EXPECT_TRUE(g.IsIdentity(acc));
    EXPECT_EQ(mpz_class(sum % g.order()), 0);
  }
}

TEST(BuildCryptogramTable, AllCandidatesVerifyAndEncodeTheirExponent) {
  const auto& g = TestGroup();
  SeededEntropy rng(5);
  const auto ct = BuildCryptogramTable(g, 3, "s", rng);
  ASSERT_EQ(ct.rows.size(), 3u);
  EXPECT_EQ(ct.m, 2u);
  const auto bases = MakePermutationBases(g, ct.m);
  int verified = 0;
  for (const auto& row : ct.rows) {
    EXPECT_TRUE(VerifyKeyOwnership(g, ct.RowContext(row.index), row.key.public_key, row.key_proof));
    for (int k = 1; k <= 8; ++k) {
      const auto& c = row.candidates[static_cast<std::size_t>(k - 1)];
      verified += VerifyOr8(g, bases, Or8Domain::kCandidate, ct.RowContext(row.index),
                            row.key.public_key, row.reconstructed_key, c.cryptogram, c.proof);
      const auto unblinded = g.Div(c.cryptogram, g.Exp(row.reconstructed_key, row.key.private_key));
      const std::uint64_t expected = std::uint64_t{1} << ((k - 1) * ct.m);
      EXPECT_EQ(BruteForceDlog(g, unblinded, 1u << 15), expected);
    }
  }
  EXPECT_EQ(verified, 24);
  for (int k = 0; k < 8; ++k) {
    EXPECT_NE(ct.rows[0].candidates[k].cryptogram, ct.rows[1].candidates[k].cryptogram);
  }
}

TEST(BuildCryptogramTable, RejectsUnusableInputs) {
  SeededEntropy rng(6);
  EXPECT_EQ(KindOf([&] { BuildCryptogramTable(TestGroup(), 0, "s", rng); }), "bad-argument");
  EXPECT_EQ(KindOf([&] { BuildCryptogramTable(TestGroup(), 2, "", rng); }), "bad-argument");
  EXPECT_EQ(KindOf([&] { BuildCryptogramTable(ToyGroup(), 2, "s", rng); }), "profile-too-small");
  EXPECT_EQ(KindOf([&] { BuildCryptogramTable(TestGroup(), 4096, "s", rng); }),
            "profile-too-small");
}

TEST(BuildCryptogramTable, SeededOutputIndependentOfWorkerCount) {
  const auto& g = TestGroup();
  Phase1Options one, three;
  three.workers = 3;
  const auto a = BuildCryptogramTable(g, 9, "s", SeededEntropy(7), one);
  const auto b = BuildCryptogramTable(g, 9, "s", SeededEntropy(7), three);
  EXPECT_EQ(Canonical(EncodeCryptogramTable(g, a)), Canonical(EncodeCryptogramTable(g, b)));
}

TEST(BuildAuditTable, AllZeroSamplesGiveExponentN) {
  const auto& g = TestGroup();
  const std::vector<LabeledSample> samples(4, LabeledSample{false, false, false});
  const auto run = MakeHonestRun(g, samples, 8);
  auto product = g.Identity();
  for (const auto& row : run.table.rows) product = g.Mul(product, row.cryptogram);
  EXPECT_EQ(BruteForceDlog(g, product, 100), 4u);
  EXPECT_EQ(TestElementHex(product), TestGeneratorPowHex("4"));
}

TEST(BuildAuditTable, OutputCarriesNoSecretsOrUnselectedCandidates) {
  const auto& g = TestGroup();
  const auto samples = testing::RandomSamples(6, 9);
  const auto run = MakeHonestRun(g, samples, 9);
  const std::string text = Canonical(EncodeAuditTable(g, run.table));
  for (std::size_t i = 0; i < run.ct.rows.size(); ++i) {
    const auto& row = run.ct.rows[i];
    EXPECT_EQ(text.find(g.scalars().ToHexString(row.key.private_key)), std::string::npos);
    const int chosen = EncodeSample(samples[i]).value();
    for (int k = 1; k <= 8; ++k) {
      const std::string c = g.ToHexString(row.candidates[k - 1].cryptogram);
      EXPECT_EQ(text.find(c) != std::string::npos, k == chosen) << "row " << i << " k " << k;
    }
  }
  EXPECT_EQ(text.find(g.scalars().ToHexString(run.ct.signer.private_key)), std::string::npos);
  EXPECT_EQ(text.find("private"), std::string::npos);
}

TEST(BuildAuditTable, SignatureCoversEveryByte) {
  const auto& g = TestGroup();
  const auto run = MakeHonestRun(g, testing::RandomSamples(3, 10), 10);
  const std::string text = Canonical(EncodeAuditTable(g, run.table));
  ASSERT_TRUE(VerifyTableSignature(g, run.table.signer_public_key,
                                   AuditTableSigningDigest(g, run.table), run.table.signature));
  int accepted = 0;
  for (std::size_t pos = 0; pos < text.size(); pos += 7) {
    std::string mutated = text;
    mutated[pos] = static_cast<char>(mutated[pos] ^ 0x01);
    bool rejected = false;
    try {
      const Document doc = ParseDocument(mutated);
      if (!DigestMatches(doc)) {
        rejected = true;
      } else {
        const auto t = DecodeAuditTable(g, doc);
        rejected = !VerifyTableSignature(g, t.signer_public_key, AuditTableSigningDigest(g, t),
                                         t.signature);
      }
    } catch (const Error&) {
      rejected = true;
    }
    accepted += !rejected;
  }
  EXPECT_EQ(accepted, 0);
}

TEST(BuildAuditTable, SizeMismatch) {
  const auto& g = TestGroup();
  SeededEntropy rng(11);
  const auto ct = BuildCryptogramTable(g, 3, "s", rng);
  const auto samples = testing::RandomSamples(4, 1);
  EXPECT_EQ(KindOf([&] { BuildAuditTable(g, ct, samples, "a", rng); }), "size-mismatch");
  EXPECT_EQ(KindOf([&] {
              BuildAuditTable(g, ct, std::span(samples).first(3), "", rng);
            }),
            "bad-argument");
}

TEST(PhaseSeparation, ReloadedTableGivesByteIdenticalAuditTable) {
  const auto& g = TestGroup();
  const auto samples = testing::RandomSamples(7, 12);
  const auto ct = BuildCryptogramTable(g, 7, "s", SeededEntropy(12));
  const std::string stored = Canonical(EncodeCryptogramTable(g, ct));
  const auto reloaded = DecodeCryptogramTable(g, ParseDocument(stored));
  EXPECT_EQ(Canonical(EncodeCryptogramTable(g, reloaded)), stored);
  const auto direct = BuildAuditTable(g, ct, samples, "a", SeededEntropy(13));
  const auto via_file = BuildAuditTable(g, reloaded, samples, "a", SeededEntropy(13));
  EXPECT_EQ(Canonical(EncodeAuditTable(g, direct)), Canonical(EncodeAuditTable(g, via_file)));
}

TEST(HomomorphicCorrectness, ProductEncodesPlainCounts) {
  const auto& g = TestGroup();
  const auto samples = testing::RandomSamples(9, 14);
  const auto run = MakeHonestRun(g, samples, 14);
  auto product = g.Identity();
  for (const auto& row : run.table.rows) product = g.Mul(product, row.cryptogram);
  // Independent exponent: sum over samples of 2^((k-1) m), via OpenSSL.
  mpz_class e = 0;
  for (const auto& s : samples) {
    const int k = 1 + (s.a ? 4 : 0) + (s.y ? 2 : 0) + (s.yhat ? 1 : 0);
    e += mpz_class(1) << ((k - 1) * TallyBits(samples.size()));
  }
  EXPECT_EQ(TestElementHex(product), TestGeneratorPowHex(e.get_str(16)));
}

TEST(Codec, CryptogramTableRejectsTamperedDigest) {
  const auto& g = TestGroup();
  const auto ct = BuildCryptogramTable(g, 2, "s", SeededEntropy(15));
  Document doc = EncodeCryptogramTable(g, ct);
  doc["session_id"] = "other";
  EXPECT_EQ(KindOf([&] { DecodeCryptogramTable(g, doc); }), "digest-mismatch");
  const Document audit = EncodeAuditTable(g, MakeHonestRun(g, testing::RandomSamples(2, 1), 1).table);
  EXPECT_EQ(KindOf([&] { DecodeAuditTable(ProductionGroup(), audit); }), "profile-mismatch");
}

TEST(PublicKeys, AnnouncementVerifies) {
  const auto& g = TestGroup();
  const auto ct = BuildCryptogramTable(g, 4, "s", SeededEntropy(16));
  Document doc = EncodePublicKeys(g, ct);
  EXPECT_TRUE(VerifyPublicKeys(g, doc));
  const auto other = BuildCryptogramTable(g, 4, "s", SeededEntropy(17));
  Document swapped = EncodePublicKeys(g, ct);
  swapped.erase("digest");
  swapped["rows"][1]["key_proof"] = EncodeSchnorr(g, other.rows[1].key_proof);
  SealDocument(swapped);
  EXPECT_FALSE(VerifyPublicKeys(g, swapped));
}

}  // namespace
}  // namespace faas
