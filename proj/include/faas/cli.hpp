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

// Command-line entry points, one subcommand per protocol step:
//
//   setup    group parameters                       (auditor)
//   phase1   cryptogram table, before any labels    (ML system)
//   phase2   fairness audit table from samples      (ML system)
//   audit    verify, tally, metrics, publish        (auditor)
//   verify   universal verification of a board      (anyone)
//   publish  append any document to a board        (auditor)
//   serve    HTTP board server                      (auditor)
//   gen      synthetic samples CSV
//   bench    per-step timings of a full run
//
// Exit codes: 0 ok, 2 verification failure, 3 input error, 4 I/O error.
// Failures print {"error": kind, "message": text} on stderr.

#ifndef FAAS_CLI_HPP_
#define FAAS_CLI_HPP_

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "faas/auditor.hpp"
#include "faas/bench.hpp"
#include "faas/board.hpp"
#include "faas/board_http.hpp"
#include "faas/bytes.hpp"
#include "faas/codec.hpp"
#include "faas/dataset.hpp"
#include "faas/entropy.hpp"
#include "faas/errors.hpp"
#include "faas/group.hpp"
#include "faas/metrics.hpp"
#include "faas/prover.hpp"

namespace faas {

struct RunConfig {
  std::string profile = "production";
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  bool seeded = false;
  std::string in;
  std::string out;
  std::string samples;
  std::string keys_out;
  std::string verification_out;
  std::string board_url;
  std::string board_file;
  std::string credential;
  std::string session_id;
  std::string audit_session_id;
  std::string kind;
  std::string rates = "uniform";
  std::string metric_mode = "paper_faithful";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t tally_budget = kDefaultTallyBudget;
  unsigned workers = 0;
  std::string bench;
  bool no_declare = false;
};

namespace cli_detail {

inline std::unique_ptr<EntropySource> MakeEntropy(const RunConfig& c) {
  if (c.seeded) return std::make_unique<SeededEntropy>(c.seed);
  return std::make_unique<SystemEntropy>();
}

inline std::string RandomId(std::string_view prefix) {
  SystemEntropy rng;
  std::array<std::uint8_t, 16> buf{};
  rng.Fill(buf);
  return std::string(prefix) + ToHex(buf);
}

inline std::string SessionId(const std::string& given, const RunConfig& c,
                             std::string_view prefix) {
  if (!given.empty()) return given;
  if (c.seeded) return std::string(prefix) + std::to_string(c.seed);
  return RandomId(prefix);
}

inline void RequirePath(const std::string& value, std::string_view flag) {
  if (value.empty()) throw InputError("bad-argument", std::string(flag) + " is required");
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("io-error", "cannot write " + path);
  out << text;
  if (!out) throw IoError("io-error", "write failed for " + path);
}

inline void MaybeWriteBench(const RunConfig& c, const BenchRecorder* bench) {
  if (bench && !c.bench.empty()) WriteDocument(c.bench, EncodeBenchRecords(bench->Records()));
}

// Appends to a board over HTTP or directly to a local board directory.
class Publisher {
 public:
  explicit Publisher(const RunConfig& c) : credential_(c.credential) {
    if (!c.board_url.empty() && !c.board_file.empty()) {
      throw InputError("bad-argument", "use only one of --board-url and --board-file");
    }
    if (c.board_url.empty() && c.board_file.empty()) return;
    RequirePath(c.credential, "--credential");
    if (!c.board_url.empty()) {
      client_ = std::make_unique<BoardClient>(c.board_url);
    } else {
      board_ = std::make_unique<Board>(c.board_file, c.credential);
    }
  }

  bool enabled() const { return client_ || board_; }

  std::uint64_t Append(EntryKind kind, const Document& payload, unsigned workers) {
    if (client_) return GetU64(client_->Append(kind, payload, credential_), "seq");
    return board_->Append(kind, payload, credential_, workers).seq;
  }

 private:
  std::string credential_;
  std::unique_ptr<BoardClient> client_;
  std::unique_ptr<Board> board_;
};

inline Document Summary(std::string_view command) {
  Document doc;
  doc["command"] = command;
  doc["status"] = "ok";
  return doc;
}

}  // namespace cli_detail

inline int CmdSetup(const RunConfig& c, std::ostream& out) {
  const Document params = SetupGroup(ParseProfile(c.profile));
  if (!c.out.empty()) WriteDocument(c.out, params);
  Document summary = cli_detail::Summary("setup");
  summary["profile"] = c.profile;
  summary["digest"] = params["digest"];
  cli_detail::Publisher publisher(c);
  if (publisher.enabled()) {
    summary["board_seq"] = publisher.Append(EntryKind::kGroupParams, params, c.workers);
  }
  if (c.out.empty() && !publisher.enabled()) summary["params"] = params;
  out << Canonical(summary) << '\n';
  return 0;
}

inline int CmdPhase1(const RunConfig& c, std::ostream& out) {
  cli_detail::RequirePath(c.out, "--out");
  if (c.n == 0) throw InputError("bad-argument", "--n must be at least 1");
  auto rng = cli_detail::MakeEntropy(c);
  const std::string session = cli_detail::SessionId(c.session_id, c, "session-");
  std::optional<BenchRecorder> bench;
  if (!c.bench.empty()) bench.emplace(c.n);
  return WithGroup(ParseProfile(c.profile), [&](const auto& group) {
    Phase1Options options;
    options.workers = c.workers;
    options.bench = bench ? &*bench : nullptr;
    const auto table = BuildCryptogramTable(group, c.n, session, *rng, options);
    WriteDocument(c.out, EncodeCryptogramTable(group, table));
    if (!c.keys_out.empty()) WriteDocument(c.keys_out, EncodePublicKeys(group, table));
    cli_detail::MaybeWriteBench(c, bench ? &*bench : nullptr);
    Document summary = cli_detail::Summary("phase1");
    summary["profile"] = c.profile;
    summary["n"] = table.n;
    summary["m"] = table.m;
    summary["session_id"] = session;
    summary["out"] = c.out;
    out << Canonical(summary) << '\n';
    return 0;
  });
}

inline int CmdPhase2(const RunConfig& c, std::ostream& out) {
  cli_detail::RequirePath(c.in, "--in");
  cli_detail::RequirePath(c.samples, "--samples");
  cli_detail::RequirePath(c.out, "--out");
  const Document ct_doc = ReadDocument(c.in);
  const auto samples = IngestCsv(c.samples);
  auto rng = cli_detail::MakeEntropy(c);
  const std::string audit_session = cli_detail::SessionId(c.audit_session_id, c, "audit-");
  return WithGroup(PeekProfile(ct_doc), [&](const auto& group) {
    const auto ct = DecodeCryptogramTable(group, ct_doc);
    std::optional<BenchRecorder> bench;
    if (!c.bench.empty()) bench.emplace(ct.n);
    Phase2Options options;
    options.workers = c.workers;
    options.declare_counts = !c.no_declare;
    options.bench = bench ? &*bench : nullptr;
    const auto table = BuildAuditTable(group, ct, samples, audit_session, *rng, options);
    const Document doc = EncodeAuditTable(group, table);
    WriteDocument(c.out, doc);
    cli_detail::MaybeWriteBench(c, bench ? &*bench : nullptr);
    Document summary = cli_detail::Summary("phase2");
    summary["n"] = table.n;
    summary["audit_session_id"] = audit_session;
    summary["digest"] = doc["digest"];
    summary["out"] = c.out;
    out << Canonical(summary) << '\n';
    return 0;
  });
}

inline int CmdAudit(const RunConfig& c, std::ostream& out) {
  cli_detail::RequirePath(c.in, "--in");
  const Document table_doc = ReadDocument(c.in);
  RequireFormat(table_doc, kAuditTableFormat);
  RequireDigest(table_doc);
  std::optional<BenchRecorder> bench;
  if (!c.bench.empty()) bench.emplace(GetU64(table_doc, "n"));
  AuditOptions options;
  options.tally_budget = c.tally_budget;
  options.mode = ParseMetricMode(c.metric_mode);
  options.workers = c.workers;
  options.bench = bench ? &*bench : nullptr;
  const AuditDocuments docs = AuditDocument(table_doc, options);
  cli_detail::MaybeWriteBench(c, bench ? &*bench : nullptr);
  if (!c.verification_out.empty()) WriteDocument(c.verification_out, docs.verification_report);
  if (!docs.verified) {
    throw VerificationError("verification-failed", "audit table does not verify");
  }
  if (!c.out.empty()) WriteDocument(c.out, *docs.fairness_report);

  Document summary = cli_detail::Summary("audit");
  summary["verified"] = true;
  summary["fairness_report"] = *docs.fairness_report;
  cli_detail::Publisher publisher(c);
  if (publisher.enabled()) {
    Document seqs = Document::array();
    seqs.push_back(publisher.Append(EntryKind::kAuditTable, table_doc, c.workers));
    seqs.push_back(publisher.Append(EntryKind::kVerificationReport, docs.verification_report,
                                    c.workers));
    seqs.push_back(publisher.Append(EntryKind::kFairnessReport, *docs.fairness_report,
                                    c.workers));
    summary["board_seqs"] = std::move(seqs);
  }
  out << Canonical(summary) << '\n';
  return 0;
}

inline ChainReport VerifyBoardFile(const std::string& dir, unsigned workers) {
  const std::filesystem::path record = std::filesystem::path(dir) / Board::kRecordFile;
  if (!std::filesystem::exists(record)) throw IoError("io-error", "no board at " + dir);
  bool terminated = true;
  const auto lines = SplitLines(ReadFileContent(record), &terminated);
  return VerifyBoardLines(lines, terminated, workers);
}

inline ChainReport VerifyBoardUrl(const std::string& url, unsigned workers) {
  BoardClient client(url);
  return VerifyBoardLines(client.FetchAll(), true, workers);
}

inline int CmdVerify(const RunConfig& c, std::ostream& out) {
  if (c.board_url.empty() == c.board_file.empty()) {
    throw InputError("bad-argument", "exactly one of --board-url and --board-file is required");
  }
  const ChainReport report = c.board_url.empty() ? VerifyBoardFile(c.board_file, c.workers)
                                                 : VerifyBoardUrl(c.board_url, c.workers);
  Document doc = ChainReportDocument(report);
  Document reproduced = Document::array();
  for (const auto& [seq, fr] : report.reproduced_fairness_reports) {
    reproduced.push_back({{"seq", seq}, {"digest", fr["digest"]}});
  }
  doc["reproduced_fairness_reports"] = std::move(reproduced);
  if (!c.out.empty()) WriteDocument(c.out, doc);
  out << Canonical(doc) << '\n';
  if (!report.valid) {
    throw VerificationError("chain-invalid", report.problems.empty() ? "board does not verify"
                                                                     : report.problems.front());
  }
  return 0;
}

inline int CmdPublish(const RunConfig& c, std::ostream& out) {
  cli_detail::RequirePath(c.in, "--in");
  cli_detail::RequirePath(c.kind, "--kind");
  cli_detail::Publisher publisher(c);
  if (!publisher.enabled()) {
    throw InputError("bad-argument", "--board-url or --board-file is required");
  }
  const std::uint64_t seq =
      publisher.Append(ParseEntryKind(c.kind), ReadDocument(c.in), c.workers);
  Document summary = cli_detail::Summary("publish");
  summary["board_seq"] = seq;
  out << Canonical(summary) << '\n';
  return 0;
}

inline int CmdGen(const RunConfig& c, std::ostream& out) {
  cli_detail::RequirePath(c.out, "--out");
  if (c.n == 0) throw InputError("bad-argument", "--n must be at least 1");
  const PermutationRates rates = c.rates.find(',') != std::string::npos ? ParseRates(c.rates)
                                                                        : PresetRates(c.rates);
  const std::uint64_t seed = c.seeded ? c.seed : std::random_device{}();
  const auto samples = GenSynthetic(c.n, rates, seed);
  const std::string text = FormatCsv(samples);
  cli_detail::WriteText(c.out, text);
  Document summary = cli_detail::Summary("gen");
  summary["n"] = c.n;
  summary["seed"] = seed;
  summary["counts"] = EncodeCounts(DeclareCounts(samples));
  summary["sha256"] = Sha256Hex(text);
  out << Canonical(summary) << '\n';
  return 0;
}

inline int CmdBench(const RunConfig& c, std::ostream& out) {
  if (c.n == 0) throw InputError("bad-argument", "--n must be at least 1");
  const unsigned workers = c.workers == 0 ? 1 : c.workers;
  auto rng = cli_detail::MakeEntropy(c);
  const PermutationRates rates = c.rates.find(',') != std::string::npos ? ParseRates(c.rates)
                                                                        : PresetRates(c.rates);
  const auto samples = GenSynthetic(c.n, rates, c.seeded ? c.seed : std::random_device{}());
  BenchRecorder bench(c.n);
  return WithGroup(ParseProfile(c.profile), [&](const auto& group) {
    Phase1Options p1;
    p1.workers = workers;
    p1.bench = &bench;
    const auto ct = BuildCryptogramTable(group, c.n, "bench-session", *rng, p1);
    Phase2Options p2;
    p2.workers = workers;
    p2.bench = &bench;
    const auto table = BuildAuditTable(group, ct, samples, "bench-audit", *rng, p2);
    AuditOptions p3;
    p3.workers = workers;
    p3.tally_budget = c.tally_budget;
    p3.mode = ParseMetricMode(c.metric_mode);
    p3.bench = &bench;
    const AuditOutcome outcome = RunAudit(group, table, p3);
    if (!outcome.verification.overall) {
      throw VerificationError("verification-failed", "benchmark table does not verify");
    }
    Document doc = EncodeBenchRecords(bench.Records());
    doc["profile"] = c.profile;
    doc["workers"] = workers;
    if (!c.out.empty()) WriteDocument(c.out, doc);
    out << Canonical(doc) << '\n';
    return 0;
  });
}

inline int CmdServe(const RunConfig& c, std::ostream& out) {
  cli_detail::RequirePath(c.board_file, "--board-file");
  cli_detail::RequirePath(c.credential, "--credential");
  Board board(c.board_file, c.credential);
  BoardServer server(board, c.workers);
  int port = c.port;
  if (port == 0) {
    port = server.BindToAnyPort(c.host);
    if (port < 0) throw IoError("io-error", "cannot bind " + c.host);
  } else if (!server.Bind(c.host, port)) {
    throw IoError("io-error", "cannot bind " + c.host + ":" + std::to_string(port));
  }
  Document summary = cli_detail::Summary("serve");
  summary["url"] = "http://" + c.host + ":" + std::to_string(port);
  summary["entries"] = board.size();
  out << Canonical(summary) << std::endl;
  server.ListenAfterBind();
  return 0;
}

inline void ReportError(std::ostream& err, const std::string& kind, const std::string& message) {
  Document doc;
  doc["error"] = kind;
  doc["message"] = message;
  err << Canonical(doc) << '\n';
}

inline int RunCli(int argc, const char* const* argv, std::ostream& out = std::cout,
                  std::ostream& err = std::cerr) {
  CLI::App app{"Fairness auditing with verifiable cryptograms", "faas"};
  app.require_subcommand(1);
  RunConfig c;

  auto profile = [&](CLI::App* sub) {
    sub->add_option("--profile", c.profile, "Group profile: production, test or toy")
        ->capture_default_str();
  };
  auto seed = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed,
                    "Deterministic seed for reproducible runs; never reuse one for real data")
        ->each([&](const std::string&) { c.seeded = true; });
  };
  auto workers = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "Worker threads, 0 = all cores")
        ->capture_default_str();
  };
  auto board = [&](CLI::App* sub) {
    sub->add_option("--board-url", c.board_url, "Board server, http://host:port");
    sub->add_option("--board-file", c.board_file, "Local board directory");
    sub->add_option("--credential", c.credential, "Board append credential");
  };
  auto bench = [&](CLI::App* sub) {
    sub->add_option("--bench", c.bench, "Write per-step timings to this file");
  };

  CLI::App* setup = app.add_subcommand("setup", "Write the group parameters");
  profile(setup);
  setup->add_option("--out", c.out, "Output file");
  board(setup);

  CLI::App* phase1 = app.add_subcommand("phase1", "Build the cryptogram table");
  profile(phase1);
  phase1->add_option("--n", c.n, "Number of samples")->required();
  seed(phase1);
  phase1->add_option("--session-id", c.session_id, "Session identifier");
  phase1->add_option("--out", c.out, "Cryptogram table output")->required();
  phase1->add_option("--keys-out", c.keys_out, "Public key announcement output");
  workers(phase1);
  bench(phase1);

  CLI::App* phase2 = app.add_subcommand("phase2", "Build the fairness audit table");
  phase2->add_option("--in", c.in, "Cryptogram table")->required();
  phase2->add_option("--samples", c.samples, "Samples CSV (A,Y,Yhat)")->required();
  phase2->add_option("--out", c.out, "Audit table output")->required();
  phase2->add_option("--audit-session-id", c.audit_session_id, "Audit session identifier");
  phase2->add_flag("--no-declare", c.no_declare, "Do not declare permutation counts");
  seed(phase2);
  workers(phase2);
  bench(phase2);

  CLI::App* audit = app.add_subcommand("audit", "Verify an audit table and compute the metrics");
  audit->add_option("--in", c.in, "Audit table")->required();
  audit->add_option("--out", c.out, "Fairness report output");
  audit->add_option("--verification-out", c.verification_out, "Verification report output");
  audit->add_option("--tally-budget", c.tally_budget, "Largest brute-force search space")
      ->capture_default_str();
  audit->add_option("--metric-mode", c.metric_mode, "paper_faithful or conditional")
      ->capture_default_str();
  board(audit);
  workers(audit);
  bench(audit);

  CLI::App* verify = app.add_subcommand("verify", "Re-verify a board from its contents alone");
  verify->add_option("--board-url", c.board_url, "Board server, http://host:port");
  verify->add_option("--board-file", c.board_file, "Local board directory");
  verify->add_option("--out", c.out, "Verification result output");
  workers(verify);

  CLI::App* publish = app.add_subcommand("publish", "Append a document to a board");
  publish->add_option("--kind", c.kind, "Entry kind")->required();
  publish->add_option("--in", c.in, "Document")->required();
  board(publish);
  workers(publish);

  CLI::App* serve = app.add_subcommand("serve", "Serve a board over HTTP");
  serve->add_option("--board-file", c.board_file, "Board directory")->required();
  serve->add_option("--credential", c.credential, "Append credential")->required();
  serve->add_option("--host", c.host, "Listen address")->capture_default_str();
  serve->add_option("--port", c.port, "Listen port, 0 = any")->capture_default_str();
  workers(serve);

  CLI::App* gen = app.add_subcommand("gen", "Generate synthetic samples");
  gen->add_option("--n", c.n, "Number of samples")->required();
  seed(gen);
  gen->add_option("--rates", c.rates,
                  "Preset (uniform, balanced, skewed, minority) or 8 comma-separated rates")
      ->capture_default_str();
  gen->add_option("--out", c.out, "Output CSV")->required();

  CLI::App* benchcmd = app.add_subcommand("bench", "Time every step of a full run");
  profile(benchcmd);
  benchcmd->add_option("--n", c.n, "Number of samples")->required();
  seed(benchcmd);
  benchcmd->add_option("--rates", c.rates, "Sample rate preset or list")->capture_default_str();
  benchcmd->add_option("--tally-budget", c.tally_budget, "Largest brute-force search space")
      ->capture_default_str();
  benchcmd->add_option("--metric-mode", c.metric_mode, "paper_faithful or conditional")
      ->capture_default_str();
  benchcmd->add_option("--out", c.out, "Records output");
  benchcmd->add_option("--workers", c.workers, "Worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    ReportError(err, "bad-argument", e.what());
    return 3;
  }

  try {
    if (*setup) return CmdSetup(c, out);
    if (*phase1) return CmdPhase1(c, out);
    if (*phase2) return CmdPhase2(c, out);
    if (*audit) return CmdAudit(c, out);
    if (*verify) return CmdVerify(c, out);
    if (*publish) return CmdPublish(c, out);
    if (*serve) return CmdServe(c, out);
    if (*gen) return CmdGen(c, out);
    if (*benchcmd) return CmdBench(c, out);
  } catch (const Error& e) {
    ReportError(err, e.kind(), e.message());
    return e.exit_code();
  } catch (const std::exception& e) {
    ReportError(err, "internal", e.what());
    return 4;
  }
  return 3;
}

}  // namespace faas

#endif  // FAAS_CLI_HPP_
