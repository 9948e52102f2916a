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

// Canonical document format shared by every artifact.
//
// A document is a JSON object with a fixed field order, no insignificant
// whitespace, group elements and scalars as fixed-width lowercase hex, a
// leading "format"/"version" pair, and a trailing "digest" field holding
// the SHA-256 (lowercase hex) of the serialization of all preceding fields.

#ifndef FAAS_CODEC_HPP_
#define FAAS_CODEC_HPP_

#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "faas/bytes.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"
#include "faas/permutation.hpp"
#include "faas/tables.hpp"
#include "faas/zkp.hpp"
#include "json.hpp"

namespace faas {

using Document = nlohmann::ordered_json;

inline constexpr int kDocumentVersion = 1;
inline constexpr std::string_view kGroupParamsFormat = "faas/group-params";
inline constexpr std::string_view kCryptogramTableFormat = "faas/cryptogram-table";
inline constexpr std::string_view kAuditTableFormat = "faas/audit-table";
inline constexpr std::string_view kPublicKeysFormat = "faas/public-keys";

inline std::string Canonical(const Document& doc) { return doc.dump(); }

inline Document ParseDocument(std::string_view text) {
  try {
    return Document::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("parse-error", e.what());
  }
}

inline Document ReadDocument(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("io-error", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseDocument(buf.str());
}

inline void WriteDocument(const std::string& path, const Document& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("io-error", "cannot write " + path);
  out << Canonical(doc) << '\n';
  if (!out) throw IoError("io-error", "write failed for " + path);
}

// Appends the content digest. `doc` must not already carry one.
inline Document& SealDocument(Document& doc) {
  doc["digest"] = Sha256Hex(Canonical(doc));
  return doc;
}

// The digest must be the last field; the body is the serialization with that
// field cut off.
inline bool DigestMatches(const Document& doc) {
  if (!doc.is_object() || doc.size() < 2) return false;
  const auto last = std::prev(doc.end());
  if (last.key() != "digest" || !last.value().is_string()) return false;
  const std::string digest = last.value().get<std::string>();
  std::string text = Canonical(doc);
  const std::string suffix = ",\"digest\":\"" + digest + "\"}";
  if (text.size() <= suffix.size() ||
      text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return false;
  }
  text.resize(text.size() - suffix.size());
  text.push_back('}');
  return Sha256Hex(text) == digest;
}

inline void RequireDigest(const Document& doc) {
  if (!DigestMatches(doc)) {
    throw InputError("digest-mismatch", "document content digest does not match");
  }
}

inline const Document& Field(const Document& doc, std::string_view name) {
  if (!doc.is_object()) throw InputError("parse-error", "expected an object");
  auto it = doc.find(name);
  if (it == doc.end()) {
    throw InputError("parse-error", "missing field '" + std::string(name) + "'");
  }
  return *it;
}

inline std::string GetString(const Document& doc, std::string_view name) {
  const Document& f = Field(doc, name);
  if (!f.is_string()) throw InputError("parse-error", "field '" + std::string(name) + "' not a string");
  return f.get<std::string>();
}

inline std::uint64_t GetU64(const Document& doc, std::string_view name) {
  const Document& f = Field(doc, name);
  if (f.is_number_unsigned()) return f.get<std::uint64_t>();
  if (f.is_number_integer() && f.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(f.get<std::int64_t>());
  }
  throw InputError("parse-error", "field '" + std::string(name) + "' not an unsigned integer");
}

inline bool GetBool(const Document& doc, std::string_view name) {
  const Document& f = Field(doc, name);
  if (!f.is_boolean()) throw InputError("parse-error", "field '" + std::string(name) + "' not a bool");
  return f.get<bool>();
}

inline void RequireFormat(const Document& doc, std::string_view format) {
  if (GetString(doc, "format") != format) {
    throw InputError("parse-error", "expected a " + std::string(format) + " document");
  }
  if (GetU64(doc, "version") != kDocumentVersion) {
    throw InputError("parse-error", "unsupported document version");
  }
}

inline Profile PeekProfile(const Document& doc) { return ParseProfile(GetString(doc, "profile")); }

template <PrimeOrderGroup G>
void RequireProfile(const G& group, const Document& doc) {
  if (PeekProfile(doc) != group.profile()) {
    throw InputError("profile-mismatch", "document was produced for a different group profile");
  }
}

// --- elements, scalars, counts ---------------------------------------------

template <PrimeOrderGroup G>
std::string EncodeElement(const G& group, const typename G::Element& e) {
  return group.ToHexString(e);
}

template <PrimeOrderGroup G>
typename G::Element DecodeElement(const G& group, const Document& doc, std::string_view name) {
  return group.FromHexString(GetString(doc, name));
}

template <PrimeOrderGroup G>
Scalar DecodeScalar(const G& group, const Document& doc, std::string_view name) {
  return group.scalars().FromHexString(GetString(doc, name));
}

inline Document EncodeCounts(const PermutationCounts& counts) {
  Document arr = Document::array();
  for (std::uint64_t v : counts.values) arr.push_back(v);
  return arr;
}

inline PermutationCounts DecodeCounts(const Document& doc) {
  if (!doc.is_array() || doc.size() != kPermutationCount) {
    throw InputError("parse-error", "counts must be an array of 8 integers");
  }
  PermutationCounts counts;
  for (std::size_t k = 0; k < counts.values.size(); ++k) {
    if (!doc[k].is_number_integer() || doc[k].get<std::int64_t>() < 0) {
      throw InputError("parse-error", "count not unsigned");
    }
    counts.values[k] = doc[k].get<std::uint64_t>();
  }
  return counts;
}

// --- group parameters -------------------------------------------------------

template <PrimeOrderGroup G>
Document EncodeGroupParams(const G& group) {
  Document doc;
  doc["format"] = kGroupParamsFormat;
  doc["version"] = kDocumentVersion;
  doc["params_version"] = kGroupParamsVersion;
  doc["profile"] = ProfileName(group.profile());
  doc["description"] = group.description();
  doc["order"] = ToHex(ExportFixed(group.order(), group.scalars().byte_size()));
  doc["generator"] = EncodeElement(group, group.Generator());
  doc["element_size"] = group.element_size();
  doc["dlog_bound"] = group.dlog_bound();
  return SealDocument(doc);
}

// The parameters document for `profile`, after the profile self-check.
inline Document SetupGroup(Profile profile) {
  return WithGroup(profile, [](const auto& group) { return EncodeGroupParams(group); });
}

// --- proofs -----------------------------------------------------------------

template <PrimeOrderGroup G>
Document EncodeSchnorr(const G& group, const SchnorrProof<G>& p) {
  Document doc;
  doc["commitment"] = EncodeElement(group, p.commitment);
  doc["response"] = group.scalars().ToHexString(p.response);
  return doc;
}

template <PrimeOrderGroup G>
SchnorrProof<G> DecodeSchnorr(const G& group, const Document& doc) {
  return {DecodeElement(group, doc, "commitment"), DecodeScalar(group, doc, "response")};
}

template <PrimeOrderGroup G>
Document EncodeOr8(const G& group, const Or8Proof<G>& p) {
  Document branches = Document::array();
  for (const auto& b : p.branches) {
    Document d;
    d["commitment_a"] = EncodeElement(group, b.commitment_a);
    d["commitment_b"] = EncodeElement(group, b.commitment_b);
    d["challenge_share"] = group.scalars().ToHexString(b.challenge_share);
    d["response"] = group.scalars().ToHexString(b.response);
    branches.push_back(std::move(d));
  }
  return branches;
}

template <PrimeOrderGroup G>
Or8Proof<G> DecodeOr8(const G& group, const Document& doc) {
  if (!doc.is_array() || doc.size() != kPermutationCount) {
    throw InputError("parse-error", "1-of-8 proof must have 8 branches");
  }
  Or8Proof<G> p;
  for (std::size_t j = 0; j < p.branches.size(); ++j) {
    auto& b = p.branches[j];
    b.commitment_a = DecodeElement(group, doc[j], "commitment_a");
    b.commitment_b = DecodeElement(group, doc[j], "commitment_b");
    b.challenge_share = DecodeScalar(group, doc[j], "challenge_share");
    b.response = DecodeScalar(group, doc[j], "response");
  }
  return p;
}

// --- cryptogram table (local Phase I store) ---------------------------------

template <PrimeOrderGroup G>
Document EncodeCryptogramTable(const G& group, const CryptogramTable<G>& t) {
  const ScalarField& f = group.scalars();
  Document doc;
  doc["format"] = kCryptogramTableFormat;
  doc["version"] = kDocumentVersion;
  doc["profile"] = ProfileName(group.profile());
  doc["session_id"] = t.session_id;
  doc["n"] = t.n;
  doc["m"] = t.m;
  doc["signer"] = {{"private_key", f.ToHexString(t.signer.private_key)},
                   {"public_key", EncodeElement(group, t.signer.public_key)}};
  Document rows = Document::array();
  for (const auto& r : t.rows) {
    Document row;
    row["index"] = r.index;
    row["private_key"] = f.ToHexString(r.key.private_key);
    row["public_key"] = EncodeElement(group, r.key.public_key);
    row["reconstructed_key"] = EncodeElement(group, r.reconstructed_key);
    row["key_proof"] = EncodeSchnorr(group, r.key_proof);
    Document candidates = Document::array();
    for (std::size_t k = 0; k < r.candidates.size(); ++k) {
      Document c;
      c["permutation"] = k + 1;
      c["cryptogram"] = EncodeElement(group, r.candidates[k].cryptogram);
      c["proof"] = EncodeOr8(group, r.candidates[k].proof);
      candidates.push_back(std::move(c));
    }
    row["candidates"] = std::move(candidates);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return SealDocument(doc);
}

template <PrimeOrderGroup G>
CryptogramTable<G> DecodeCryptogramTable(const G& group, const Document& doc) {
  RequireFormat(doc, kCryptogramTableFormat);
  RequireProfile(group, doc);
  RequireDigest(doc);
  CryptogramTable<G> t;
  t.session_id = GetString(doc, "session_id");
  t.n = GetU64(doc, "n");
  t.m = static_cast<unsigned>(GetU64(doc, "m"));
  const Document& signer = Field(doc, "signer");
  t.signer = {DecodeScalar(group, signer, "private_key"),
              DecodeElement(group, signer, "public_key")};
  const Document& rows = Field(doc, "rows");
  if (!rows.is_array()) throw InputError("parse-error", "rows must be an array");
  t.rows.reserve(rows.size());
  for (const Document& row : rows) {
    CryptogramRow<G> r;
    r.index = GetU64(row, "index");
    r.key = {DecodeScalar(group, row, "private_key"), DecodeElement(group, row, "public_key")};
    r.reconstructed_key = DecodeElement(group, row, "reconstructed_key");
    r.key_proof = DecodeSchnorr(group, Field(row, "key_proof"));
    const Document& candidates = Field(row, "candidates");
    if (!candidates.is_array() || candidates.size() != kPermutationCount) {
      throw InputError("parse-error", "row must carry 8 candidates");
    }
    for (std::size_t k = 0; k < r.candidates.size(); ++k) {
      if (GetU64(candidates[k], "permutation") != k + 1) {
        throw InputError("parse-error", "candidates out of permutation order");
      }
      r.candidates[k].cryptogram = DecodeElement(group, candidates[k], "cryptogram");
      r.candidates[k].proof = DecodeOr8(group, Field(candidates[k], "proof"));
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

// --- fairness audit table (Phase II wire format) ----------------------------

// Everything the table signature covers, in wire order.
template <PrimeOrderGroup G>
Document EncodeAuditTableBody(const G& group, const FairnessAuditTable<G>& t) {
  Document doc;
  doc["format"] = kAuditTableFormat;
  doc["version"] = kDocumentVersion;
  doc["profile"] = ProfileName(group.profile());
  doc["session_id"] = t.session_id;
  doc["audit_session_id"] = t.audit_session_id;
  doc["n"] = t.n;
  doc["m"] = t.m;
  doc["signer_public_key"] = EncodeElement(group, t.signer_public_key);
  Document rows = Document::array();
  for (const auto& r : t.rows) {
    Document row;
    row["index"] = r.index;
    row["public_key"] = EncodeElement(group, r.public_key);
    row["reconstructed_key"] = EncodeElement(group, r.reconstructed_key);
    row["cryptogram"] = EncodeElement(group, r.cryptogram);
    row["or8_proof"] = EncodeOr8(group, r.or8_proof);
    row["key_proof"] = EncodeSchnorr(group, r.key_proof);
    row["encoding_proof"] = EncodeOr8(group, r.encoding_proof);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["declared_counts"] = t.declared_counts ? EncodeCounts(*t.declared_counts) : Document();
  return doc;
}

template <PrimeOrderGroup G>
Digest AuditTableSigningDigest(const G& group, const FairnessAuditTable<G>& t) {
  return Sha256Of(Canonical(EncodeAuditTableBody(group, t)));
}

template <PrimeOrderGroup G>
Document EncodeAuditTable(const G& group, const FairnessAuditTable<G>& t) {
  Document doc = EncodeAuditTableBody(group, t);
  doc["signature"] = EncodeSchnorr(group, SchnorrProof<G>{t.signature.commitment,
                                                          t.signature.response});
  return SealDocument(doc);
}

template <PrimeOrderGroup G>
FairnessAuditTable<G> DecodeAuditTable(const G& group, const Document& doc) {
  RequireFormat(doc, kAuditTableFormat);
  RequireProfile(group, doc);
  RequireDigest(doc);
  FairnessAuditTable<G> t;
  t.session_id = GetString(doc, "session_id");
  t.audit_session_id = GetString(doc, "audit_session_id");
  t.n = GetU64(doc, "n");
  t.m = static_cast<unsigned>(GetU64(doc, "m"));
  t.signer_public_key = DecodeElement(group, doc, "signer_public_key");
  const Document& rows = Field(doc, "rows");
  if (!rows.is_array()) throw InputError("parse-error", "rows must be an array");
  t.rows.reserve(rows.size());
  for (const Document& row : rows) {
    AuditRow<G> r;
    r.index = GetU64(row, "index");
    r.public_key = DecodeElement(group, row, "public_key");
    r.reconstructed_key = DecodeElement(group, row, "reconstructed_key");
    r.cryptogram = DecodeElement(group, row, "cryptogram");
    r.or8_proof = DecodeOr8(group, Field(row, "or8_proof"));
    r.key_proof = DecodeSchnorr(group, Field(row, "key_proof"));
    r.encoding_proof = DecodeOr8(group, Field(row, "encoding_proof"));
    t.rows.push_back(std::move(r));
  }
  const Document& counts = Field(doc, "declared_counts");
  if (!counts.is_null()) t.declared_counts = DecodeCounts(counts);
  auto sig = DecodeSchnorr(group, Field(doc, "signature"));
  t.signature = {sig.commitment, sig.response};
  return t;
}

// --- public key announcement (board payload) --------------------------------

template <PrimeOrderGroup G>
Document EncodePublicKeys(const G& group, const CryptogramTable<G>& t) {
  Document doc;
  doc["format"] = kPublicKeysFormat;
  doc["version"] = kDocumentVersion;
  doc["profile"] = ProfileName(group.profile());
  doc["session_id"] = t.session_id;
  doc["n"] = t.n;
  doc["m"] = t.m;
  doc["signer_public_key"] = EncodeElement(group, t.signer.public_key);
  Document rows = Document::array();
  for (const auto& r : t.rows) {
    Document row;
    row["index"] = r.index;
    row["public_key"] = EncodeElement(group, r.key.public_key);
    row["key_proof"] = EncodeSchnorr(group, r.key_proof);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return SealDocument(doc);
}

// True iff every announced key carries a valid ownership proof.
template <PrimeOrderGroup G>
bool VerifyPublicKeys(const G& group, const Document& doc) {
  RequireFormat(doc, kPublicKeysFormat);
  RequireProfile(group, doc);
  RequireDigest(doc);
  const std::string session = GetString(doc, "session_id");
  const std::uint64_t n = GetU64(doc, "n");
  const unsigned m = static_cast<unsigned>(GetU64(doc, "m"));
  DecodeElement(group, doc, "signer_public_key");
  const Document& rows = Field(doc, "rows");
  if (!rows.is_array() || rows.size() != n || m != TallyBits(n)) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (GetU64(rows[i], "index") != i) return false;
    const auto X = DecodeElement(group, rows[i], "public_key");
    const auto proof = DecodeSchnorr(group, Field(rows[i], "key_proof"));
    if (!VerifyKeyOwnership(group, ProofContext{session, "", n, m, i}, X, proof)) return false;
  }
  return true;
}

}  // namespace faas

#endif  // FAAS_CODEC_HPP_
