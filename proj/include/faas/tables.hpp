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

#ifndef FAAS_TABLES_HPP_
#define FAAS_TABLES_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faas/group.hpp"
#include "faas/permutation.hpp"
#include "faas/zkp.hpp"

namespace faas {

template <PrimeOrderGroup G>
struct KeyPair {
  Scalar private_key;
  typename G::Element public_key;
};

template <PrimeOrderGroup G>
struct Candidate {
  typename G::Element cryptogram;
  Or8Proof<G> proof;
};

template <PrimeOrderGroup G>
struct CryptogramRow {
  std::uint64_t index = 0;
  KeyPair<G> key;
  typename G::Element reconstructed_key;
  SchnorrProof<G> key_proof;
  std::array<Candidate<G>, kPermutationCount> candidates;
};

// Phase I output. Holds the row private keys and the signing key, so it is a
// local artifact of the ML system and never leaves it.
template <PrimeOrderGroup G>
struct CryptogramTable {
  std::string session_id;
  std::uint64_t n = 0;
  unsigned m = 0;
  KeyPair<G> signer;
  std::vector<CryptogramRow<G>> rows;

  ProofContext RowContext(std::uint64_t row) const { return {session_id, "", n, m, row}; }
};

// Proof of knowledge of the selected encoding, re-issued under the audit
// session. Same statement as the candidate proof, separate transcript domain.
template <PrimeOrderGroup G>
using EncodingKnowledgeProof = Or8Proof<G>;

template <PrimeOrderGroup G>
struct AuditRow {
  std::uint64_t index = 0;
  typename G::Element public_key;
  typename G::Element reconstructed_key;
  typename G::Element cryptogram;
  Or8Proof<G> or8_proof;
  SchnorrProof<G> key_proof;
  EncodingKnowledgeProof<G> encoding_proof;
};

// Phase II output sent to the auditor. The schema has no slot for private
// keys or unselected candidates.
template <PrimeOrderGroup G>
struct FairnessAuditTable {
  std::string session_id;
  std::string audit_session_id;
  std::uint64_t n = 0;
  unsigned m = 0;
  typename G::Element signer_public_key;
  std::vector<AuditRow<G>> rows;
  std::optional<PermutationCounts> declared_counts;
  TableSignature<G> signature;

  ProofContext RowContext(std::uint64_t row) const { return {session_id, "", n, m, row}; }
  ProofContext EncodingContext(std::uint64_t row) const {
    return {session_id, audit_session_id, n, m, row};
  }
};

}  // namespace faas

#endif  // FAAS_TABLES_HPP_
