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

// Shared helpers for the test suites. The oracles here deliberately avoid
// the library's own arithmetic: modular exponentiation goes through
// OpenSSL BIGNUM or plain 128-bit integers, not GMP.

#ifndef FAAS_TESTS_TEST_SUPPORT_HPP_
#define FAAS_TESTS_TEST_SUPPORT_HPP_

#include <openssl/bn.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "faas/faas.hpp"

namespace faas::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("faas-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// (base^e mod p) with OpenSSL, all values as lowercase hex without padding.
inline std::string BnPowModHex(const std::string& base_hex, const std::string& e_hex,
                               const std::string& p_hex) {
  BIGNUM *b = nullptr, *e = nullptr, *p = nullptr;
  BN_hex2bn(&b, base_hex.c_str());
  BN_hex2bn(&e, e_hex.c_str());
  BN_hex2bn(&p, p_hex.c_str());
  BIGNUM* r = BN_new();
  BN_CTX* ctx = BN_CTX_new();
  BN_mod_exp(r, b, e, p, ctx);
  char* hex = BN_bn2hex(r);
  std::string out(hex);
  OPENSSL_free(hex);
  BN_CTX_free(ctx);
  BN_free(r);
  BN_free(p);
  BN_free(e);
  BN_free(b);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  out.erase(0, std::min(out.find_first_not_of('0'), out.size()));
  if (out.empty()) out = "0";
  return out;
}

// Element of the test profile as unpadded lowercase hex.
inline std::string TestElementHex(const ModpElement& e) { return e.value.get_str(16); }

inline std::string TestGeneratorPowHex(const std::string& e_hex) {
  return BnPowModHex(TestGroup().Generator().value.get_str(16), e_hex,
                     TestGroup().modulus().get_str(16));
}

inline std::uint64_t ToyPow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1, b = base % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

inline std::vector<LabeledSample> RandomSamples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<LabeledSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const int v = pick(engine);
    out.push_back(LabeledSample{(v & 4) != 0, (v & 2) != 0, (v & 1) != 0});
  }
  return out;
}

// Plaintext tally used as the oracle for protocol counts: index 4A+2Y+Yhat.
inline std::array<std::uint64_t, 8> PlainCounts(const std::vector<LabeledSample>& samples) {
  std::array<std::uint64_t, 8> out{};
  for (const auto& s : samples) ++out[(s.a ? 4 : 0) + (s.y ? 2 : 0) + (s.yhat ? 1 : 0)];
  return out;
}

template <PrimeOrderGroup G>
struct HonestRun {
  CryptogramTable<G> ct;
  std::vector<LabeledSample> samples;
  FairnessAuditTable<G> table;
};

template <PrimeOrderGroup G>
HonestRun<G> MakeHonestRun(const G& group, const std::vector<LabeledSample>& samples,
                           std::uint64_t seed, bool declare = true,
                           const std::string& session = "session-t",
                           const std::string& audit_session = "audit-t") {
  SeededEntropy rng(seed);
  HonestRun<G> run;
  run.samples = samples;
  run.ct = BuildCryptogramTable(group, samples.size(), session, rng);
  Phase2Options opts;
  opts.declare_counts = declare;
  run.table = BuildAuditTable(group, run.ct, samples, audit_session, rng, opts);
  return run;
}

}  // namespace faas::testing

#endif  // FAAS_TESTS_TEST_SUPPORT_HPP_
