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

// Auditor side: verify a fairness audit table, multiply the cryptograms,
// recover the permutation counts and compute the fairness metrics.
//
// Because sum_i x_i y_i = 0 for reconstructed keys, the product of all
// selected cryptograms is g^(sum_k count_k 2^((k-1) m)). With every count
// at most n < 2^m, the counts are the base-2^m digits of that exponent, so
// they are recovered either by checking declared counts against the product
// or, for small n, by enumerating all C(n+7, 7) compositions.

#ifndef FAAS_AUDITOR_HPP_
#define FAAS_AUDITOR_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faas/bench.hpp"
#include "faas/codec.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"
#include "faas/metrics.hpp"
#include "faas/parallel.hpp"
#include "faas/permutation.hpp"
#include "faas/prover.hpp"
#include "faas/tables.hpp"
#include "faas/zkp.hpp"

namespace faas {

inline constexpr std::uint64_t kDefaultTallyBudget = 10'000'000;
inline constexpr std::string_view kVerificationReportFormat = "faas/verification-report";
inline constexpr std::string_view kFairnessReportFormat = "faas/fairness-report";

struct RowVerification {
  bool key_proof_ok = false;
  bool or8_ok = false;
  bool encoding_proof_ok = false;
  bool ok() const { return key_proof_ok && or8_ok && encoding_proof_ok; }
};

struct VerificationReport {
  bool signature_ok = false;
  // n, m and row indices agree with each other.
  bool structure_ok = false;
  bool reconstructed_keys_ok = false;
  // Declared counts match the product; trivially true when none declared.
  bool counts_ok = false;
  std::vector<RowVerification> rows;
  bool overall = false;
};

// C(n + 7, 7): number of ways n samples can fall into 8 permutations.
inline mpz_class SearchSpaceSize(std::uint64_t n) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n + kPermutationCount - 1),
               kPermutationCount - 1);
  return out;
}

template <PrimeOrderGroup G>
typename G::Element HomomorphicProduct(const G& group, const FairnessAuditTable<G>& table) {
  if (table.rows.empty()) throw InputError("empty-table", "audit table has no rows");
  auto acc = group.Identity();
  for (const auto& row : table.rows) acc = group.Mul(acc, row.cryptogram);
  return acc;
}

template <PrimeOrderGroup G>
bool VerifyDeclaredCounts(const G& group, const typename G::Element& product,
                          const PermutationCounts& counts, std::uint64_t n, unsigned m) {
  if (counts.total() != n) return false;
  return group.Equal(group.ExpGenBig(TallyExponent(counts, m)), product);
}

struct TallyResult {
  PermutationCounts counts;
  std::uint64_t candidates_tried = 0;
};

// Exhaustive search over all compositions of n into 8 parts. Products are
// extended incrementally, so each candidate costs about one group operation.
template <PrimeOrderGroup G>
TallyResult BruteForceTally(const G& group, const typename G::Element& product, std::uint64_t n,
                            unsigned m, std::uint64_t budget = kDefaultTallyBudget) {
  const mpz_class space = SearchSpaceSize(n);
  if (space > mpz_class(static_cast<unsigned long>(budget))) {
    throw InputError("tally-budget-exceeded",
                     "search space " + space.get_str() + " exceeds budget " +
                         std::to_string(budget));
  }
  const auto bases = MakePermutationBases(group, m);
  // last[j] = g^(j p_8)
  std::vector<typename G::Element> last;
  last.reserve(n + 1);
  last.push_back(group.Identity());
  for (std::uint64_t j = 1; j <= n; ++j) last.push_back(group.Mul(last.back(), bases.powers[7]));

  TallyResult result;
  PermutationCounts current;
  std::function<bool(std::size_t, std::uint64_t, const typename G::Element&)> search =
      [&](std::size_t level, std::uint64_t remaining, const typename G::Element& acc) -> bool {
    if (level == kPermutationCount - 1) {
      ++result.candidates_tried;
      current.values[level] = remaining;
      if (group.Equal(group.Mul(acc, last[remaining]), product)) {
        result.counts = current;
        return true;
      }
      return false;
    }
    auto running = acc;
    for (std::uint64_t c = 0; c <= remaining; ++c) {
      current.values[level] = c;
      if (search(level + 1, remaining - c, running)) return true;
      if (c < remaining) running = group.Mul(running, bases.powers[level]);
    }
    return false;
  };
  if (!search(0, n, group.Identity())) {
    throw VerificationError("tally-no-match",
                            "no composition of n=" + std::to_string(n) + " matches the product");
  }
  return result;
}

template <PrimeOrderGroup G>
VerificationReport VerifyAuditTable(const G& group, const FairnessAuditTable<G>& table,
                                    unsigned workers = 1, BenchRecorder* bench = nullptr) {
  constexpr BenchPhase kPhase = BenchPhase::kPhase3;
  VerificationReport report;
  const std::size_t count = table.rows.size();

  report.structure_ok = count > 0 && table.n == count && table.m == TallyBits(count) &&
                        table.m <= MaxTallyBits(group);
  for (std::size_t i = 0; i < count && report.structure_ok; ++i) {
    if (table.rows[i].index != i) report.structure_ok = false;
  }

  report.signature_ok = TimedBulk(bench, kPhase, bench_step::kSignatureCheck, 1, [&] {
    return VerifyTableSignature(group, table.signer_public_key,
                                AuditTableSigningDigest(group, table), table.signature);
  });

  if (count > 0) {
    const auto start = BenchRecorder::Clock::now();
    std::vector<typename G::Element> publics;
    publics.reserve(count);
    for (const auto& row : table.rows) publics.push_back(row.public_key);
    const auto expected = ReconstructedKeys<G>(group, publics);
    report.reconstructed_keys_ok = true;
    for (std::size_t i = 0; i < count; ++i) {
      if (!group.Equal(expected[i], table.rows[i].reconstructed_key)) {
        report.reconstructed_keys_ok = false;
        break;
      }
    }
    if (bench) bench->AddBulk(kPhase, bench_step::kReconstructedKeysCheck, ElapsedMs(start), count);
  }

  report.rows.resize(count);
  if (report.structure_ok) {
    const auto bases = MakePermutationBases(group, table.m);
    ParallelFor(count, workers, [&](std::size_t i) {
      const auto& row = table.rows[i];
      auto& out = report.rows[i];
      out.key_proof_ok = Timed(bench, kPhase, bench_step::kKeyOwnershipVerification, [&] {
        return VerifyKeyOwnership(group, table.RowContext(i), row.public_key, row.key_proof);
      });
      out.or8_ok = Timed(bench, kPhase, bench_step::kOr8Verification, [&] {
        return VerifyOr8(group, bases, Or8Domain::kCandidate, table.RowContext(i), row.public_key,
                         row.reconstructed_key, row.cryptogram, row.or8_proof);
      });
      out.encoding_proof_ok = Timed(bench, kPhase, bench_step::kEncodingProofVerification, [&] {
        return VerifyOr8(group, bases, Or8Domain::kEncoding, table.EncodingContext(i),
                         row.public_key, row.reconstructed_key, row.cryptogram,
                         row.encoding_proof);
      });
    });
  }

  report.counts_ok = true;
  if (table.declared_counts) {
    report.counts_ok = false;
    if (count > 0 && report.structure_ok) {
      const auto product = TimedBulk(bench, kPhase, bench_step::kCryptogramSummation, count,
                                     [&] { return HomomorphicProduct(group, table); });
      report.counts_ok = TimedBulk(bench, kPhase, bench_step::kTally, 1, [&] {
        return VerifyDeclaredCounts(group, product, *table.declared_counts, table.n, table.m);
      });
    }
  }

  report.overall = report.signature_ok && report.structure_ok && report.reconstructed_keys_ok &&
                   report.counts_ok;
  for (const auto& r : report.rows) report.overall = report.overall && r.ok();
  return report;
}

enum class TallyMethod { kDeclared, kBruteForce };

inline std::string_view TallyMethodName(TallyMethod m) {
  return m == TallyMethod::kDeclared ? "declared" : "brute_force";
}

struct AuditOptions {
  std::uint64_t tally_budget = kDefaultTallyBudget;
  MetricMode mode = MetricMode::kPaperFaithful;
  unsigned workers = 1;
  BenchRecorder* bench = nullptr;
};

struct AuditOutcome {
  VerificationReport verification;
  TallyMethod method = TallyMethod::kDeclared;
  std::optional<FairnessMetrics> metrics;
};

// Brute force when C(n+7,7) fits the budget, otherwise the declared counts
// must be present and verified.
inline TallyMethod ChooseTallyMethod(std::uint64_t n, std::uint64_t budget) {
  return SearchSpaceSize(n) <= mpz_class(static_cast<unsigned long>(budget))
             ? TallyMethod::kBruteForce
             : TallyMethod::kDeclared;
}

// Full Phase III on a decoded table. Metrics are only produced for tables
// that verify.
template <PrimeOrderGroup G>
AuditOutcome RunAudit(const G& group, const FairnessAuditTable<G>& table,
                      const AuditOptions& options = {}) {
  constexpr BenchPhase kPhase = BenchPhase::kPhase3;
  BenchRecorder* bench = options.bench;
  const auto phase_start = BenchRecorder::Clock::now();
  struct PhaseTotal {
    BenchRecorder* bench;
    BenchRecorder::Clock::time_point start;
    ~PhaseTotal() {
      if (bench) bench->SetPhaseTotal(BenchPhase::kPhase3, ElapsedMs(start) / 1000.0);
    }
  } phase_total{bench, phase_start};

  AuditOutcome outcome;
  outcome.verification = VerifyAuditTable(group, table, options.workers, bench);
  outcome.method = ChooseTallyMethod(table.n, options.tally_budget);
  if (!outcome.verification.overall) return outcome;

  PermutationCounts counts;
  if (outcome.method == TallyMethod::kBruteForce) {
    // Already timed during verification when counts were declared.
    BenchRecorder* sum_bench = table.declared_counts ? nullptr : bench;
    const auto product = TimedBulk(sum_bench, kPhase, bench_step::kCryptogramSummation, table.n,
                                   [&] { return HomomorphicProduct(group, table); });
    counts = TimedBulk(bench, kPhase, bench_step::kTally, 1, [&] {
      return BruteForceTally(group, product, table.n, table.m, options.tally_budget).counts;
    });
    if (table.declared_counts && *table.declared_counts != counts) {
      outcome.verification.counts_ok = false;
      outcome.verification.overall = false;
      return outcome;
    }
  } else {
    if (!table.declared_counts) {
      throw InputError("tally-infeasible",
                       "search space exceeds the tally budget and no counts were declared");
    }
    // Declared counts were already checked against the product.
    counts = *table.declared_counts;
  }
  outcome.metrics = TimedBulk(bench, kPhase, bench_step::kMetrics, 1,
                              [&] { return ComputeMetrics(counts, options.mode); });
  return outcome;
}

// --- report documents -------------------------------------------------------

inline Document EncodeVerificationReport(Profile profile, const std::string& table_digest,
                                         const VerificationReport& r) {
  Document doc;
  doc["format"] = kVerificationReportFormat;
  doc["version"] = kDocumentVersion;
  doc["profile"] = ProfileName(profile);
  doc["audit_table_digest"] = table_digest;
  doc["signature_ok"] = r.signature_ok;
  doc["structure_ok"] = r.structure_ok;
  doc["reconstructed_keys_ok"] = r.reconstructed_keys_ok;
  doc["counts_ok"] = r.counts_ok;
  Document rows = Document::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    Document row;
    row["index"] = i;
    row["key_proof_ok"] = r.rows[i].key_proof_ok;
    row["or8_ok"] = r.rows[i].or8_ok;
    row["encoding_proof_ok"] = r.rows[i].encoding_proof_ok;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["overall"] = r.overall;
  return SealDocument(doc);
}

inline Document EncodeRatio(const Ratio& r) {
  Document doc;
  doc["defined"] = r.defined();
  doc["numerator"] = r.numerator;
  doc["denominator"] = r.denominator;
  doc["value"] = r.defined() ? Document(r.value()) : Document();
  return doc;
}

inline Document EncodeFairnessReport(Profile profile, const std::string& table_digest,
                                     std::uint64_t n, unsigned m, TallyMethod method,
                                     std::uint64_t budget, const FairnessMetrics& metrics) {
  Document doc;
  doc["format"] = kFairnessReportFormat;
  doc["version"] = kDocumentVersion;
  doc["profile"] = ProfileName(profile);
  doc["audit_table_digest"] = table_digest;
  doc["n"] = n;
  doc["m"] = m;
  doc["tally"] = {{"method", TallyMethodName(method)},
                  {"budget", budget},
                  {"search_space", SearchSpaceSize(n).get_str()}};
  doc["mode"] = MetricModeName(metrics.mode);
  doc["counts"] = EncodeCounts(metrics.counts);
  Document components;
  for (const auto& [name, ratio] : metrics.components.Named()) {
    components[std::string(name)] = EncodeRatio(ratio);
  }
  doc["components"] = std::move(components);
  doc["metrics"] = {{"demographic_parity", EncodeRatio(metrics.demographic_parity)},
                    {"equalised_odds_y0", EncodeRatio(metrics.equalised_odds_y0)},
                    {"equalised_odds_y1", EncodeRatio(metrics.equalised_odds_y1)},
                    {"equal_opportunity", EncodeRatio(metrics.equal_opportunity)}};
  return SealDocument(doc);
}

// Phase III straight from an audit-table document, for any profile.
struct AuditDocuments {
  Document verification_report;
  std::optional<Document> fairness_report;
  bool verified = false;
};

inline AuditDocuments AuditDocument(const Document& audit_table, const AuditOptions& options) {
  const Profile profile = PeekProfile(audit_table);
  return WithGroup(profile, [&](const auto& group) {
    const auto table = DecodeAuditTable(group, audit_table);
    const std::string digest = GetString(audit_table, "digest");
    const AuditOutcome outcome = RunAudit(group, table, options);
    AuditDocuments docs;
    docs.verified = outcome.verification.overall;
    docs.verification_report = EncodeVerificationReport(profile, digest, outcome.verification);
    if (outcome.metrics) {
      docs.fairness_report = EncodeFairnessReport(profile, digest, table.n, table.m,
                                                  outcome.method, options.tally_budget,
                                                  *outcome.metrics);
    }
    return docs;
  });
}

}  // namespace faas

#endif  // FAAS_AUDITOR_HPP_
