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

// Per-step timing for the three protocol phases. Steps timed per row keep
// every sample; steps that run once over the whole table are stored as one
// bulk observation and reported per item.

#ifndef FAAS_BENCH_HPP_
#define FAAS_BENCH_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faas/codec.hpp"
#include "faas/errors.hpp"

namespace faas {

enum class BenchPhase { kPhase1 = 1, kPhase2 = 2, kPhase3 = 3 };

inline std::string_view BenchPhaseName(BenchPhase p) {
  switch (p) {
    case BenchPhase::kPhase1:
      return "phase1";
    case BenchPhase::kPhase2:
      return "phase2";
    case BenchPhase::kPhase3:
      return "phase3";
  }
  return "unknown";
}

namespace bench_step {
inline constexpr std::string_view kKeyGeneration = "key generation";
inline constexpr std::string_view kKeyOwnershipProof = "key-ownership ZKP";
inline constexpr std::string_view kReconstructedKeys = "reconstructed keys";
inline constexpr std::string_view kOr8Proofs = "1-out-of-8 proofs";
inline constexpr std::string_view kSelfVerification = "1-out-of-8 self-verification";
inline constexpr std::string_view kTableDerivation = "table derivation";
inline constexpr std::string_view kEncodingProof = "encoding proof";
inline constexpr std::string_view kSigning = "signing";
inline constexpr std::string_view kSignatureCheck = "signature check";
inline constexpr std::string_view kKeyOwnershipVerification = "key-ownership ZKP verification";
inline constexpr std::string_view kReconstructedKeysCheck = "reconstructed keys check";
inline constexpr std::string_view kOr8Verification = "1-out-of-8 verification";
inline constexpr std::string_view kEncodingProofVerification = "encoding-proof verification";
inline constexpr std::string_view kCryptogramSummation = "cryptogram summation";
inline constexpr std::string_view kTally = "tally";
inline constexpr std::string_view kMetrics = "metrics";
inline constexpr std::string_view kPhaseTotal = "total";
}  // namespace bench_step

struct BenchRecord {
  BenchPhase phase = BenchPhase::kPhase1;
  std::string step;
  double mean_ms = 0;  // per item
  double std_ms = 0;
  double total_s = 0;
  std::uint64_t n = 0;
  std::uint64_t items = 0;
};

class BenchRecorder {
 public:
  using Clock = std::chrono::steady_clock;

  explicit BenchRecorder(std::uint64_t n = 0) : n_(n) {}

  void set_n(std::uint64_t n) { n_ = n; }
  std::uint64_t n() const { return n_; }

  // One item that took `ms`.
  void Add(BenchPhase phase, std::string_view step, double ms) {
    std::lock_guard lock(mutex_);
    auto& s = Series(phase, step);
    s.samples.push_back(ms);
  }

  // `items` items that together took `total_ms`.
  void AddBulk(BenchPhase phase, std::string_view step, double total_ms, std::uint64_t items) {
    std::lock_guard lock(mutex_);
    auto& s = Series(phase, step);
    s.bulk_ms += total_ms;
    s.bulk_items += items;
  }

  void SetPhaseTotal(BenchPhase phase, double seconds) {
    std::lock_guard lock(mutex_);
    phase_totals_[phase] = seconds;
  }

  std::vector<BenchRecord> Records() const {
    std::lock_guard lock(mutex_);
    std::vector<BenchRecord> out;
    for (const auto& key : order_) {
      const auto& s = series_.at(key);
      BenchRecord r;
      r.phase = key.first;
      r.step = key.second;
      r.n = n_;
      double sum = s.bulk_ms;
      for (double v : s.samples) sum += v;
      r.items = s.samples.size() + s.bulk_items;
      r.total_s = sum / 1000.0;
      if (r.items > 0) r.mean_ms = sum / static_cast<double>(r.items);
      if (s.bulk_items == 0 && s.samples.size() > 1) {
        double sq = 0;
        for (double v : s.samples) sq += (v - r.mean_ms) * (v - r.mean_ms);
        r.std_ms = std::sqrt(sq / static_cast<double>(s.samples.size() - 1));
      }
      out.push_back(std::move(r));
    }
    for (const auto& [phase, seconds] : phase_totals_) {
      BenchRecord r;
      r.phase = phase;
      r.step = bench_step::kPhaseTotal;
      r.n = n_;
      r.items = n_;
      r.total_s = seconds;
      if (n_ > 0) r.mean_ms = seconds * 1000.0 / static_cast<double>(n_);
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  struct Samples {
    std::vector<double> samples;
    double bulk_ms = 0;
    std::uint64_t bulk_items = 0;
  };

  Samples& Series(BenchPhase phase, std::string_view step) {
    auto key = std::make_pair(phase, std::string(step));
    auto it = series_.find(key);
    if (it == series_.end()) {
      order_.push_back(key);
      it = series_.emplace(std::move(key), Samples{}).first;
    }
    return it->second;
  }

  mutable std::mutex mutex_;
  std::uint64_t n_;
  std::map<std::pair<BenchPhase, std::string>, Samples> series_;
  std::vector<std::pair<BenchPhase, std::string>> order_;
  std::map<BenchPhase, double> phase_totals_;
};

inline double ElapsedMs(BenchRecorder::Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(BenchRecorder::Clock::now() - since).count();
}

// Times fn() as one item of `step` when a recorder is attached.
template <class Fn>
decltype(auto) Timed(BenchRecorder* bench, BenchPhase phase, std::string_view step, Fn&& fn) {
  if (!bench) return fn();
  struct Guard {
    BenchRecorder* bench;
    BenchPhase phase;
    std::string_view step;
    BenchRecorder::Clock::time_point start = BenchRecorder::Clock::now();
    ~Guard() { bench->Add(phase, step, ElapsedMs(start)); }
  } guard{bench, phase, step};
  return fn();
}

// Same, but fn() covers `items` items.
template <class Fn>
decltype(auto) TimedBulk(BenchRecorder* bench, BenchPhase phase, std::string_view step,
                         std::uint64_t items, Fn&& fn) {
  if (!bench) return fn();
  struct Guard {
    BenchRecorder* bench;
    BenchPhase phase;
    std::string_view step;
    std::uint64_t items;
    BenchRecorder::Clock::time_point start = BenchRecorder::Clock::now();
    ~Guard() { bench->AddBulk(phase, step, ElapsedMs(start), items); }
  } guard{bench, phase, step, items};
  return fn();
}

inline constexpr std::string_view kBenchFormat = "faas/bench";

inline Document EncodeBenchRecords(const std::vector<BenchRecord>& records) {
  Document doc;
  doc["format"] = kBenchFormat;
  doc["version"] = kDocumentVersion;
  Document list = Document::array();
  for (const auto& r : records) {
    Document item;
    item["phase"] = BenchPhaseName(r.phase);
    item["step"] = r.step;
    item["mean_ms"] = r.mean_ms;
    item["std_ms"] = r.std_ms;
    item["total_s"] = r.total_s;
    item["n"] = r.n;
    item["items"] = r.items;
    list.push_back(std::move(item));
  }
  doc["records"] = std::move(list);
  return doc;
}

}  // namespace faas

#endif  // FAAS_BENCH_HPP_
