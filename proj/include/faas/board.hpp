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

// Fairness board: an append-only, hash-chained log of protocol documents.
//
// Storage is a directory with two files:
//   board.jsonl  one canonical entry per line
//   board.idx    "seq offset length entry_hash" per line
//
// Entry layout (canonical field order):
//   {"seq","timestamp","kind","payload_digest","payload","prev_hash","entry_hash"}
// with payload_digest = SHA-256(canonical payload) and
//   entry_hash = SHA-256(canonical {"seq","timestamp","kind","payload_digest","prev_hash"}).
// The first entry links to kGenesisHash.

#ifndef FAAS_BOARD_HPP_
#define FAAS_BOARD_HPP_

#include <openssl/crypto.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "faas/auditor.hpp"
#include "faas/bytes.hpp"
#include "faas/codec.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"

namespace faas {

inline constexpr std::string_view kGenesisHash =
    "0000000000000000000000000000000000000000000000000000000000000000";

enum class EntryKind {
  kGroupParams,
  kPublicKeyAnnouncement,
  kAuditTable,
  kVerificationReport,
  kFairnessReport,
};

inline constexpr std::array<std::pair<EntryKind, std::string_view>, 5> kEntryKindNames = {{
    {EntryKind::kGroupParams, "group_params"},
    {EntryKind::kPublicKeyAnnouncement, "public_key_announcement"},
    {EntryKind::kAuditTable, "audit_table"},
    {EntryKind::kVerificationReport, "verification_report"},
    {EntryKind::kFairnessReport, "fairness_report"},
}};

inline std::string_view EntryKindName(EntryKind kind) {
  for (const auto& [k, name] : kEntryKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

inline EntryKind ParseEntryKind(std::string_view name) {
  for (const auto& [k, n] : kEntryKindNames) {
    if (n == name) return k;
  }
  throw InputError("unknown-kind", "unknown board entry kind '" + std::string(name) + "'");
}

struct BoardEntry {
  std::uint64_t seq = 0;
  std::string timestamp;
  EntryKind kind = EntryKind::kGroupParams;
  std::string payload_digest;
  Document payload;
  std::string prev_hash;
  std::string entry_hash;
};

inline std::string EntryHash(std::uint64_t seq, const std::string& timestamp, EntryKind kind,
                             const std::string& payload_digest, const std::string& prev_hash) {
  Document header;
  header["seq"] = seq;
  header["timestamp"] = timestamp;
  header["kind"] = EntryKindName(kind);
  header["payload_digest"] = payload_digest;
  header["prev_hash"] = prev_hash;
  return Sha256Hex(Canonical(header));
}

inline std::string SerializeEntry(const BoardEntry& e) {
  Document doc;
  doc["seq"] = e.seq;
  doc["timestamp"] = e.timestamp;
  doc["kind"] = EntryKindName(e.kind);
  doc["payload_digest"] = e.payload_digest;
  doc["payload"] = e.payload;
  doc["prev_hash"] = e.prev_hash;
  doc["entry_hash"] = e.entry_hash;
  return Canonical(doc);
}

inline BoardEntry ParseEntry(std::string_view line) {
  const Document doc = ParseDocument(line);
  if (!doc.is_object()) throw InputError("malformed-entry", "board entry is not an object");
  BoardEntry e;
  e.seq = GetU64(doc, "seq");
  e.timestamp = GetString(doc, "timestamp");
  e.kind = ParseEntryKind(GetString(doc, "kind"));
  e.payload_digest = GetString(doc, "payload_digest");
  e.payload = Field(doc, "payload");
  e.prev_hash = GetString(doc, "prev_hash");
  e.entry_hash = GetString(doc, "entry_hash");
  return e;
}

inline BoardEntry SealEntry(std::uint64_t seq, std::string timestamp, EntryKind kind,
                            Document payload, std::string prev_hash) {
  BoardEntry e;
  e.seq = seq;
  e.timestamp = std::move(timestamp);
  e.kind = kind;
  e.payload_digest = Sha256Hex(Canonical(payload));
  e.payload = std::move(payload);
  e.prev_hash = std::move(prev_hash);
  e.entry_hash = EntryHash(e.seq, e.timestamp, e.kind, e.payload_digest, e.prev_hash);
  return e;
}

inline std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- universal verification -------------------------------------------------

struct ChainReport {
  bool valid = true;
  std::size_t entries = 0;
  std::vector<std::string> problems;
  // Fairness reports recomputed from the stored audit tables, by seq.
  std::map<std::uint64_t, Document> reproduced_fairness_reports;

  void Fail(std::size_t seq, const std::string& what) {
    valid = false;
    problems.push_back("entry " + std::to_string(seq) + ": " + what);
  }
};

inline Document ChainReportDocument(const ChainReport& r) {
  Document doc;
  doc["valid"] = r.valid;
  doc["entries"] = r.entries;
  doc["problems"] = r.problems;
  return doc;
}

namespace board_detail {

inline bool IsFairnessReport(const Document& payload) {
  return payload.is_object() && payload.contains("format") &&
         payload["format"] == kFairnessReportFormat;
}

inline AuditOptions OptionsFromReport(const Document& report) {
  AuditOptions options;
  options.mode = ParseMetricMode(GetString(report, "mode"));
  options.tally_budget = GetU64(Field(report, "tally"), "budget");
  return options;
}

}  // namespace board_detail

// Re-runs every check a third party can make from the raw lines alone:
// canonical encoding, sequence numbers, hash links, payload digests, every
// proof and signature of each audit table, and bit-exact recomputation of
// every published report. `terminated` is false when the file did not end
// with a newline.
inline ChainReport VerifyBoardLines(const std::vector<std::string>& lines, bool terminated = true,
                                    unsigned workers = 1) {
  ChainReport report;
  report.entries = lines.size();
  if (!terminated) report.Fail(lines.empty() ? 0 : lines.size() - 1, "missing final newline");

  std::vector<std::optional<BoardEntry>> entries(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      entries[i] = ParseEntry(lines[i]);
    } catch (const Error& e) {
      report.Fail(i, "unparsable: " + e.message());
    }
  }

  // Options each stored table will be audited with: those of the first
  // fairness report that references it, defaults otherwise.
  std::map<std::string, AuditOptions> options_by_table;
  for (const auto& e : entries) {
    if (!e || e->kind != EntryKind::kFairnessReport || !board_detail::IsFairnessReport(e->payload))
      continue;
    try {
      const std::string ref = GetString(e->payload, "audit_table_digest");
      if (!options_by_table.count(ref)) {
        AuditOptions o = board_detail::OptionsFromReport(e->payload);
        o.workers = workers;
        options_by_table.emplace(ref, o);
      }
    } catch (const Error&) {
      // reported when the entry itself is checked
    }
  }

  std::map<std::string, AuditDocuments> audited;  // by audit table digest
  std::map<std::tuple<std::string, int, std::uint64_t>, AuditDocuments> reaudited;
  std::string expected_prev(kGenesisHash);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!entries[i]) {
      expected_prev.clear();
      continue;
    }
    const BoardEntry& e = *entries[i];
    if (SerializeEntry(e) != lines[i]) report.Fail(i, "not in canonical form");
    if (e.seq != i) report.Fail(i, "sequence number " + std::to_string(e.seq));
    if (e.prev_hash != expected_prev) report.Fail(i, "broken hash link");
    if (e.payload_digest != Sha256Hex(Canonical(e.payload))) report.Fail(i, "payload digest");
    if (e.entry_hash != EntryHash(e.seq, e.timestamp, e.kind, e.payload_digest, e.prev_hash)) {
      report.Fail(i, "entry hash");
    }
    expected_prev = e.entry_hash;

    try {
      switch (e.kind) {
        case EntryKind::kGroupParams:
          if (e.payload != SetupGroup(PeekProfile(e.payload))) {
            report.Fail(i, "group parameters differ from the profile");
          }
          break;
        case EntryKind::kPublicKeyAnnouncement: {
          const bool ok = WithGroup(PeekProfile(e.payload), [&](const auto& group) {
            return VerifyPublicKeys(group, e.payload);
          });
          if (!ok) report.Fail(i, "public key proofs do not verify");
          break;
        }
        case EntryKind::kAuditTable: {
          RequireFormat(e.payload, kAuditTableFormat);
          RequireDigest(e.payload);
          const std::string digest = GetString(e.payload, "digest");
          AuditOptions options;
          options.workers = workers;
          if (auto it = options_by_table.find(digest); it != options_by_table.end()) {
            options = it->second;
          }
          auto docs = AuditDocument(e.payload, options);
          if (!docs.verified) report.Fail(i, "audit table does not verify");
          audited.insert_or_assign(digest, std::move(docs));
          break;
        }
        case EntryKind::kVerificationReport: {
          RequireFormat(e.payload, kVerificationReportFormat);
          const std::string ref = GetString(e.payload, "audit_table_digest");
          auto it = audited.find(ref);
          if (it == audited.end()) {
            report.Fail(i, "references an audit table not on the board");
          } else if (it->second.verification_report != e.payload) {
            report.Fail(i, "verification report does not reproduce");
          }
          break;
        }
        case EntryKind::kFairnessReport: {
          RequireFormat(e.payload, kFairnessReportFormat);
          const std::string ref = GetString(e.payload, "audit_table_digest");
          auto it = audited.find(ref);
          if (it == audited.end()) {
            report.Fail(i, "references an audit table not on the board");
            break;
          }
          AuditOptions options = board_detail::OptionsFromReport(e.payload);
          options.workers = workers;
          const AuditDocuments* docs = &it->second;
          const auto& used = options_by_table[ref];
          if (options.mode != used.mode || options.tally_budget != used.tally_budget) {
            // Rare: a second report on the same table with other options.
            // Fetch the table payload again from its entry.
            const auto key = std::make_tuple(ref, static_cast<int>(options.mode),
                                             options.tally_budget);
            auto rit = reaudited.find(key);
            if (rit == reaudited.end()) {
              for (std::size_t j = 0; j < i; ++j) {
                if (entries[j] && entries[j]->kind == EntryKind::kAuditTable &&
                    entries[j]->payload.contains("digest") &&
                    entries[j]->payload["digest"] == ref) {
                  rit = reaudited.emplace(key, AuditDocument(entries[j]->payload, options)).first;
                  break;
                }
              }
            }
            if (rit != reaudited.end()) docs = &rit->second;
          }
          if (!docs->fairness_report) {
            report.Fail(i, "no fairness report can be derived from the table");
          } else {
            report.reproduced_fairness_reports[i] = *docs->fairness_report;
            if (*docs->fairness_report != e.payload ||
                Canonical(*docs->fairness_report) != Canonical(e.payload)) {
              report.Fail(i, "fairness report does not reproduce");
            }
          }
          break;
        }
      }
    } catch (const Error& err) {
      report.Fail(i, err.kind() + ": " + err.message());
    }
  }
  return report;
}

// Splits file content into lines; `terminated` reports a trailing newline.
inline std::vector<std::string> SplitLines(const std::string& content, bool* terminated) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    const std::size_t end = content.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(content.substr(start));
      if (terminated) *terminated = false;
      return lines;
    }
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  if (terminated) *terminated = true;
  return lines;
}

inline std::string ReadFileContent(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("io-error", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --- the board --------------------------------------------------------------

class Board {
 public:
  using Clock = std::function<std::string()>;

  static constexpr const char* kRecordFile = "board.jsonl";
  static constexpr const char* kIndexFile = "board.idx";

  // Opens (creating if needed) the board stored in `dir`. Existing content is
  // loaded as-is, so a damaged board can still be served and inspected.
  Board(std::filesystem::path dir, std::string credential, Clock clock = UtcNow)
      : dir_(std::move(dir)), credential_(std::move(credential)), clock_(std::move(clock)) {
    if (credential_.empty()) throw InputError("bad-argument", "board credential must be non-empty");
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("io-error", "cannot create " + dir_.string() + ": " + ec.message());
    if (std::filesystem::exists(record_path())) {
      bool terminated = true;
      lines_ = SplitLines(ReadFileContent(record_path()), &terminated);
      size_bytes_ = std::filesystem::file_size(record_path());
      for (const auto& line : lines_) {
        try {
          const BoardEntry e = ParseEntry(line);
          if (e.kind == EntryKind::kAuditTable && e.payload.contains("digest")) {
            audit_tables_.insert(e.payload["digest"].get<std::string>());
          }
        } catch (const Error&) {
        }
      }
    }
  }

  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path record_path() const { return dir_ / kRecordFile; }
  std::filesystem::path index_path() const { return dir_ / kIndexFile; }

  // Checks the credential and the admission gate, then persists the entry.
  BoardEntry Append(EntryKind kind, const Document& payload, std::string_view credential,
                    unsigned workers = 1) {
    if (credential.size() != credential_.size() ||
        CRYPTO_memcmp(credential.data(), credential_.data(), credential_.size()) != 0) {
      throw InputError("bad-credential", "credential rejected");
    }
    Gate(kind, payload, workers);

    std::unique_lock lock(mutex_);
    std::string prev(kGenesisHash);
    if (!lines_.empty()) {
      try {
        prev = ParseEntry(lines_.back()).entry_hash;
      } catch (const Error&) {
        throw IoError("board-corrupt", "last board entry is unreadable");
      }
    }
    BoardEntry entry = SealEntry(lines_.size(), clock_(), kind, payload, std::move(prev));
    std::string line = SerializeEntry(entry);
    {
      std::ofstream out(record_path(), std::ios::binary | std::ios::app);
      out << line << '\n';
      out.flush();
      if (!out) throw IoError("io-error", "cannot append to " + record_path().string());
    }
    {
      std::ofstream idx(index_path(), std::ios::binary | std::ios::app);
      idx << entry.seq << ' ' << size_bytes_ << ' ' << line.size() << ' ' << entry.entry_hash
          << '\n';
      if (!idx) throw IoError("io-error", "cannot append to " + index_path().string());
    }
    size_bytes_ += line.size() + 1;
    if (kind == EntryKind::kAuditTable) audit_tables_.insert(GetString(payload, "digest"));
    lines_.push_back(std::move(line));
    return entry;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return lines_.size();
  }

  std::string GetRaw(std::uint64_t seq) const {
    std::shared_lock lock(mutex_);
    if (seq >= lines_.size()) {
      throw InputError("not-found", "no board entry with seq " + std::to_string(seq));
    }
    return lines_[seq];
  }

  BoardEntry Get(std::uint64_t seq) const { return ParseEntry(GetRaw(seq)); }

  // Entries with seq in [from, to).
  std::vector<std::string> ListRaw(std::uint64_t from = 0,
                                   std::uint64_t to = UINT64_MAX) const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    for (std::uint64_t i = from; i < std::min<std::uint64_t>(to, lines_.size()); ++i) {
      out.push_back(lines_[i]);
    }
    return out;
  }

  std::vector<BoardEntry> List(std::uint64_t from = 0, std::uint64_t to = UINT64_MAX) const {
    std::vector<BoardEntry> out;
    for (const auto& line : ListRaw(from, to)) out.push_back(ParseEntry(line));
    return out;
  }

  std::optional<BoardEntry> Head() const {
    std::shared_lock lock(mutex_);
    if (lines_.empty()) return std::nullopt;
    return ParseEntry(lines_.back());
  }

  // Reads the record file from disk again and verifies it completely, plus
  // the index against the record file.
  ChainReport VerifyChain(unsigned workers = 1) const {
    std::shared_lock lock(mutex_);
    if (!std::filesystem::exists(record_path())) return ChainReport{};
    const std::string content = ReadFileContent(record_path());
    bool terminated = true;
    const auto lines = SplitLines(content, &terminated);
    ChainReport report = VerifyBoardLines(lines, terminated, workers);
    CheckIndex(content, lines, report);
    return report;
  }

 private:
  void Gate(EntryKind kind, const Document& payload, unsigned workers) const {
    if (!payload.is_object()) throw InputError("malformed-payload", "payload must be an object");
    auto reject = [](const std::string& why) { return VerificationError("gate-rejected", why); };
    switch (kind) {
      case EntryKind::kGroupParams:
        if (payload != SetupGroup(PeekProfile(payload))) {
          throw reject("group parameters differ from the profile");
        }
        return;
      case EntryKind::kPublicKeyAnnouncement:
        if (!WithGroup(PeekProfile(payload),
                       [&](const auto& group) { return VerifyPublicKeys(group, payload); })) {
          throw reject("public key proofs do not verify");
        }
        return;
      case EntryKind::kAuditTable: {
        RequireFormat(payload, kAuditTableFormat);
        if (!DigestMatches(payload)) throw reject("audit table digest mismatch");
        const bool ok = WithGroup(PeekProfile(payload), [&](const auto& group) {
          return VerifyAuditTable(group, DecodeAuditTable(group, payload), workers).overall;
        });
        if (!ok) throw reject("audit table does not verify");
        return;
      }
      case EntryKind::kVerificationReport:
      case EntryKind::kFairnessReport: {
        RequireFormat(payload, kind == EntryKind::kVerificationReport ? kVerificationReportFormat
                                                                      : kFairnessReportFormat);
        if (!DigestMatches(payload)) throw reject("report digest mismatch");
        std::shared_lock lock(mutex_);
        if (!audit_tables_.count(GetString(payload, "audit_table_digest"))) {
          throw reject("report references an audit table not on the board");
        }
        return;
      }
    }
  }

  void CheckIndex(const std::string& content, const std::vector<std::string>& lines,
                  ChainReport& report) const {
    if (!std::filesystem::exists(index_path())) {
      if (!lines.empty()) report.Fail(0, "index file missing");
      return;
    }
    bool terminated = true;
    const auto rows = SplitLines(ReadFileContent(index_path()), &terminated);
    if (!terminated || rows.size() != lines.size()) {
      report.Fail(rows.size(), "index does not match the record file");
      return;
    }
    std::uint64_t offset = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::uint64_t seq = 0, off = 0, len = 0;
      std::string hash;
      std::istringstream in(rows[i]);
      in >> seq >> off >> len >> hash;
      std::string expected_hash;
      try {
        expected_hash = ParseEntry(lines[i]).entry_hash;
      } catch (const Error&) {
      }
      if (!in || seq != i || off != offset || len != lines[i].size() || hash != expected_hash ||
          content.compare(off, len, lines[i]) != 0) {
        report.Fail(i, "index row does not match");
      }
      offset += lines[i].size() + 1;
    }
  }

  std::filesystem::path dir_;
  std::string credential_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::vector<std::string> lines_;
  std::set<std::string> audit_tables_;
  std::uint64_t size_bytes_ = 0;
};

}  // namespace faas

#endif  // FAAS_BOARD_HPP_
