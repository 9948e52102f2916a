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

#ifndef FAAS_ENTROPY_HPP_
#define FAAS_ENTROPY_HPP_

#include <openssl/rand.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>

#include "faas/bytes.hpp"
#include "faas/errors.hpp"

namespace faas {

// Source of random bytes for key and nonce generation.
//
// `Fork(stream)` derives an independent source for one worker or one table
// row. Row-level forking keeps seeded runs reproducible regardless of how
// many worker threads process the rows.
class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual void Fill(std::span<std::uint8_t> out) = 0;
  virtual std::unique_ptr<EntropySource> Fork(std::uint64_t stream) const = 0;
};

// Operating-system entropy through OpenSSL's CSPRNG. Safe to share.
class SystemEntropy final : public EntropySource {
 public:
  void Fill(std::span<std::uint8_t> out) override {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
      throw IoError("entropy-failure", "RAND_bytes failed");
    }
  }
  std::unique_ptr<EntropySource> Fork(std::uint64_t) const override {
    return std::make_unique<SystemEntropy>();
  }
};

// Deterministic SHA-256 counter-mode generator for tests, benchmarks and
// reproducible pipeline runs. Not thread-safe; fork one per worker.
class SeededEntropy final : public EntropySource {
 public:
  explicit SeededEntropy(std::uint64_t seed) {
    Bytes material = ToBytes("faas/seeded-entropy/v1");
    AppendU64(material, seed);
    key_ = Sha256().Update(material).Finish();
  }

  void Fill(std::span<std::uint8_t> out) override {
    std::size_t written = 0;
    while (written < out.size()) {
      if (offset_ == block_.size()) Refill();
      std::size_t take = std::min(out.size() - written, block_.size() - offset_);
      std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(offset_), take,
                  out.begin() + static_cast<std::ptrdiff_t>(written));
      offset_ += take;
      written += take;
    }
  }

  std::unique_ptr<EntropySource> Fork(std::uint64_t stream) const override {
    Bytes material(key_.begin(), key_.end());
    const Bytes tag = ToBytes("fork");
    material.insert(material.end(), tag.begin(), tag.end());
    AppendU64(material, stream);
    return std::unique_ptr<SeededEntropy>(
        new SeededEntropy(Sha256().Update(material).Finish()));
  }

 private:
  explicit SeededEntropy(const Digest& key) : key_(key) {}

  void Refill() {
    Bytes material(key_.begin(), key_.end());
    AppendU64(material, counter_++);
    block_ = Sha256().Update(material).Finish();
    offset_ = 0;
  }

  Digest key_{};
  Digest block_{};
  std::size_t offset_ = block_.size();
  std::uint64_t counter_ = 0;
};

}  // namespace faas

#endif  // FAAS_ENTROPY_HPP_
