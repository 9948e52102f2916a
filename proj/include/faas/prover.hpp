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

// ML-system side of the protocol.
//
// Phase I (before any labels exist): per-row key pairs, key-ownership
// proofs, reconstructed keys R_i = prod_{j<i} X_j / prod_{j>i} X_j, and for
// every row all eight candidate cryptograms C_{i,k} = R_i^{x_i} g^{p_k} with
// their 1-of-8 proofs.
//
// Phase II (after the model produced predictions): pick the candidate whose
// permutation matches each sample, attach an encoding-knowledge proof bound
// to the audit session, optionally declare the counts, and sign.

#ifndef FAAS_PROVER_HPP_
#define FAAS_PROVER_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "faas/bench.hpp"
#include "faas/codec.hpp"
#include "faas/entropy.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"
#include "faas/parallel.hpp"
#include "faas/permutation.hpp"
#include "faas/tables.hpp"
#include "faas/zkp.hpp"

namespace faas {

// Entropy stream ids. Each row then forks its own stream from these, so a
// seeded run yields the same table for any worker count.
enum class ProverStream : std::uint64_t {
  kKeys = 1,
  kKeyProofs = 2,
  kCandidateProofs = 3,
  kSigner = 4,
  kEncodingProofs = 5,
  kSignature = 6,
};

inline std::unique_ptr<EntropySource> RowStream(const EntropySource& rng, ProverStream stream,
                                                std::uint64_t row) {
  return rng.Fork(static_cast<std::uint64_t>(stream))->Fork(row);
}

struct Phase1Options {
  unsigned workers = 1;
  // Re-verify all eight proofs per row before the table is released.
  bool self_verify = true;
  BenchRecorder* bench = nullptr;
};

struct Phase2Options {
  unsigned workers = 1;
  bool declare_counts = true;
  BenchRecorder* bench = nullptr;
};

template <PrimeOrderGroup G>
std::vector<KeyPair<G>> GenerateKeypairs(const G& group, std::uint64_t n, const EntropySource& rng,
                                         unsigned workers = 1, BenchRecorder* bench = nullptr) {
  if (n == 0) throw InputError("bad-argument", "n must be at least 1");
  std::vector<KeyPair<G>> keys(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    Timed(bench, BenchPhase::kPhase1, bench_step::kKeyGeneration, [&] {
      auto row_rng = RowStream(rng, ProverStream::kKeys, i);
      keys[i].private_key = RandomScalar(group, *row_rng);
      keys[i].public_key = group.ExpGen(keys[i].private_key);
    });
  });
  return keys;
}

// Two linear passes (prefix and suffix products), then one division per row.
template <PrimeOrderGroup G>
std::vector<typename G::Element> ReconstructedKeys(const G& group,
                                                   std::span<const typename G::Element> publics) {
  if (publics.empty()) throw InputError("bad-argument", "no public keys");
  const std::size_t n = publics.size();
  std::vector<typename G::Element> suffix(n + 1, group.Identity());
  for (std::size_t i = n; i-- > 0;) suffix[i] = group.Mul(suffix[i + 1], publics[i]);
  std::vector<typename G::Element> out;
  out.reserve(n);
  auto prefix = group.Identity();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(group.Div(prefix, suffix[i + 1]));
    prefix = group.Mul(prefix, publics[i]);
  }
  return out;
}

// All eight candidates for one row with their proofs.
template <PrimeOrderGroup G>
std::array<Candidate<G>, kPermutationCount> BuildRowCandidates(
    const G& group, const PermutationBases<G>& bases, const ProofContext& ctx,
    const KeyPair<G>& key, const typename G::Element& reconstructed, EntropySource& rng,
    bool self_verify, BenchRecorder* bench = nullptr) {
  std::array<Candidate<G>, kPermutationCount> out;
  Timed(bench, BenchPhase::kPhase1, bench_step::kOr8Proofs, [&] {
    const auto blinding = group.Exp(reconstructed, key.private_key);
    for (int k = 1; k <= kPermutationCount; ++k) {
      const PermutationIndex idx(k);
      auto& c = out[idx.offset()];
      c.cryptogram = group.Mul(blinding, bases.powers[idx.offset()]);
      c.proof = ProveOr8(group, bases, Or8Domain::kCandidate, ctx, key.private_key,
                         key.public_key, reconstructed, c.cryptogram, idx, rng);
    }
  });
  if (!self_verify) return out;
  Timed(bench, BenchPhase::kPhase1, bench_step::kSelfVerification, [&] {
    for (const auto& c : out) {
      if (!VerifyOr8(group, bases, Or8Domain::kCandidate, ctx, key.public_key, reconstructed,
                     c.cryptogram, c.proof)) {
        throw VerificationError("self-verification-failed",
                                "candidate proof failed for row " + std::to_string(ctx.row));
      }
    }
  });
  return out;
}

template <PrimeOrderGroup G>
void RequireTallyCapacity(const G& group, std::uint64_t n) {
  const unsigned m = TallyBits(n);
  if (m > MaxTallyBits(group)) {
    throw InputError("profile-too-small",
                     "profile '" + std::string(ProfileName(group.profile())) + "' cannot tally n=" +
                         std::to_string(n) + " without exponent wrap-around");
  }
}

template <PrimeOrderGroup G>
CryptogramTable<G> BuildCryptogramTable(const G& group, std::uint64_t n,
                                        const std::string& session_id, const EntropySource& rng,
                                        const Phase1Options& options = {}) {
  if (n == 0) throw InputError("bad-argument", "n must be at least 1");
  if (session_id.empty()) throw InputError("bad-argument", "session id must be non-empty");
  RequireTallyCapacity(group, n);

  CryptogramTable<G> table;
  table.session_id = session_id;
  table.n = n;
  table.m = TallyBits(n);
  table.rows.resize(n);

  BenchRecorder* bench = options.bench;
  const auto phase_start = BenchRecorder::Clock::now();
  auto keys = GenerateKeypairs(group, n, rng, options.workers, bench);
  std::vector<typename G::Element> publics;
  publics.reserve(n);
  for (const auto& k : keys) publics.push_back(k.public_key);
  auto reconstructed = TimedBulk(bench, BenchPhase::kPhase1, bench_step::kReconstructedKeys, n,
                                 [&] { return ReconstructedKeys<G>(group, publics); });
  const auto bases = MakePermutationBases(group, table.m);

  ParallelFor(n, options.workers, [&](std::size_t i) {
    auto& row = table.rows[i];
    row.index = i;
    row.key = keys[i];
    row.reconstructed_key = reconstructed[i];
    const ProofContext ctx = table.RowContext(i);
    auto proof_rng = RowStream(rng, ProverStream::kKeyProofs, i);
    row.key_proof = Timed(bench, BenchPhase::kPhase1, bench_step::kKeyOwnershipProof, [&] {
      return ProveKeyOwnership(group, ctx, row.key.private_key, row.key.public_key, *proof_rng);
    });
    auto or8_rng = RowStream(rng, ProverStream::kCandidateProofs, i);
    row.candidates = BuildRowCandidates(group, bases, ctx, row.key, row.reconstructed_key,
                                        *or8_rng, options.self_verify, bench);
  });

  auto signer_rng = rng.Fork(static_cast<std::uint64_t>(ProverStream::kSigner));
  table.signer.private_key = RandomScalar(group, *signer_rng);
  table.signer.public_key = group.ExpGen(table.signer.private_key);
  if (bench) bench->SetPhaseTotal(BenchPhase::kPhase1, ElapsedMs(phase_start) / 1000.0);
  return table;
}

// Row i of the audit table: the candidate selected by `sample` plus a fresh
// encoding-knowledge proof under the audit session.
template <PrimeOrderGroup G>
AuditRow<G> AssembleAuditRow(const G& group, const PermutationBases<G>& bases,
                             const FairnessAuditTable<G>& shell, const CryptogramRow<G>& src,
                             const LabeledSample& sample, EntropySource& rng,
                             BenchRecorder* bench = nullptr) {
  const PermutationIndex k = EncodeSample(sample);
  AuditRow<G> row;
  Timed(bench, BenchPhase::kPhase2, bench_step::kTableDerivation, [&] {
    const auto& chosen = src.candidates[k.offset()];
    row.index = src.index;
    row.public_key = src.key.public_key;
    row.reconstructed_key = src.reconstructed_key;
    row.cryptogram = chosen.cryptogram;
    row.or8_proof = chosen.proof;
    row.key_proof = src.key_proof;
  });
  row.encoding_proof = Timed(bench, BenchPhase::kPhase2, bench_step::kEncodingProof, [&] {
    return ProveOr8(group, bases, Or8Domain::kEncoding, shell.EncodingContext(src.index),
                    src.key.private_key, src.key.public_key, src.reconstructed_key,
                    row.cryptogram, k, rng);
  });
  return row;
}

template <PrimeOrderGroup G>
void SignAuditTable(const G& group, FairnessAuditTable<G>& table, const Scalar& signing_key,
                    EntropySource& rng) {
  const Digest digest = AuditTableSigningDigest(group, table);
  table.signature = SignTable(group, signing_key, digest, rng);
}

template <PrimeOrderGroup G>
FairnessAuditTable<G> BuildAuditTable(const G& group, const CryptogramTable<G>& ct,
                                      std::span<const LabeledSample> samples,
                                      const std::string& audit_session_id,
                                      const EntropySource& rng, const Phase2Options& options = {}) {
  if (samples.size() != ct.n) {
    throw InputError("size-mismatch", "cryptogram table has n=" + std::to_string(ct.n) + " but " +
                                          std::to_string(samples.size()) + " samples were given");
  }
  if (ct.rows.size() != ct.n) {
    throw InputError("malformed-table", "cryptogram table row count does not match n");
  }
  if (audit_session_id.empty()) {
    throw InputError("bad-argument", "audit session id must be non-empty");
  }
  BenchRecorder* bench = options.bench;
  const auto phase_start = BenchRecorder::Clock::now();
  FairnessAuditTable<G> table;
  table.session_id = ct.session_id;
  table.audit_session_id = audit_session_id;
  table.n = ct.n;
  table.m = ct.m;
  table.signer_public_key = ct.signer.public_key;
  table.rows.resize(ct.n);
  const auto bases = MakePermutationBases(group, ct.m);

  ParallelFor(ct.n, options.workers, [&](std::size_t i) {
    auto row_rng = RowStream(rng, ProverStream::kEncodingProofs, i);
    table.rows[i] =
        AssembleAuditRow(group, bases, table, ct.rows[i], samples[i], *row_rng, bench);
  });

  if (options.declare_counts) table.declared_counts = DeclareCounts(samples);
  auto sig_rng = rng.Fork(static_cast<std::uint64_t>(ProverStream::kSignature));
  TimedBulk(bench, BenchPhase::kPhase2, bench_step::kSigning, 1,
            [&] { SignAuditTable(group, table, ct.signer.private_key, *sig_rng); });
  if (bench) bench->SetPhaseTotal(BenchPhase::kPhase2, ElapsedMs(phase_start) / 1000.0);
  return table;
}

}  // namespace faas

#endif  // FAAS_PROVER_HPP_
