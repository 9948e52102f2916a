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

#include <fstream>
#include <set>
#include <sstream>

#include "faas/cli.hpp"
#include "support/test_support.hpp"

namespace faas {
namespace {

using testing::TempDir;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Faas(std::vector<std::string> args) {
  args.insert(args.begin(), "faas");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ErrorKind(const CliResult& r) {
  return GetString(ParseDocument(r.err.substr(0, r.err.find('\n'))), "error");
}

class CliPipeline : public ::testing::Test {
 protected:
  std::string f(const std::string& name) const { return dir_.file(name); }
  std::string board() const { return dir_.file("board"); }

  void Phase1(std::size_t n) {
    auto r = Faas({"phase1", "--profile", "test", "--n", std::to_string(n), "--seed", "11",
                  "--out", f("ct.json"), "--keys-out", f("keys.json")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void Gen(std::size_t n, const std::string& name = "samples.csv") {
    auto r = Faas({"gen", "--n", std::to_string(n), "--seed", "12", "--out", f(name)});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void Phase2() {
    auto r = Faas({"phase2", "--in", f("ct.json"), "--samples", f("samples.csv"), "--seed", "13",
                  "--out", f("table.json")});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  TempDir dir_;
};

TEST_F(CliPipeline, FullRunPublishesAndVerifies) {
  ASSERT_EQ(Faas({"setup", "--profile", "test", "--board-file", board(), "--credential", "c"}).code,
            0);
  Phase1(50);
  ASSERT_EQ(Faas({"publish", "--kind", "public_key_announcement", "--in", f("keys.json"),
                 "--board-file", board(), "--credential", "c"})
                .code,
            0);
  Gen(50);
  Phase2();
  const auto audit = Faas({"audit", "--in", f("table.json"), "--out", f("report.json"),
                          "--verification-out", f("verification.json"), "--board-file", board(),
                          "--credential", "c"});
  ASSERT_EQ(audit.code, 0) << audit.err;
  const Document summary = ParseDocument(audit.out);
  EXPECT_EQ(summary["board_seqs"].size(), 3u);
  const Document report = ReadDocument(f("report.json"));
  EXPECT_EQ(DecodeCounts(Field(report, "counts")),
            DeclareCounts(IngestCsv(f("samples.csv"))));

  Board stored(board(), "c");
  EXPECT_EQ(stored.size(), 5u);
  const auto verify = Faas({"verify", "--board-file", board()});
  ASSERT_EQ(verify.code, 0) << verify.err;
  const Document result = ParseDocument(verify.out);
  EXPECT_TRUE(result["valid"].get<bool>());
  EXPECT_EQ(result["reproduced_fairness_reports"][0]["digest"], report["digest"]);
}

TEST_F(CliPipeline, TamperedBoardIsInvalid) {
  Phase1(8);
  Gen(8);
  Phase2();
  ASSERT_EQ(Faas({"audit", "--in", f("table.json"), "--board-file", board(), "--credential", "c"})
                .code,
            0);
  const std::string path = board() + "/" + Board::kRecordFile;
  std::string content = ReadFileContent(path);
  const auto pos = content.find("\"cryptogram\":\"") + 20;
  content[pos] = content[pos] == 'a' ? 'b' : 'a';
  std::ofstream(path, std::ios::binary | std::ios::trunc) << content;
  const auto verify = Faas({"verify", "--board-file", board()});
  EXPECT_EQ(verify.code, 2);
  EXPECT_EQ(ErrorKind(verify), "chain-invalid");
}

TEST_F(CliPipeline, SizeMismatchIsAnInputError) {
  Phase1(5);
  Gen(4);
  const auto r = Faas({"phase2", "--in", f("ct.json"), "--samples", f("samples.csv"), "--out",
                      f("table.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(ErrorKind(r), "size-mismatch");
  EXPECT_FALSE(std::filesystem::exists(f("table.json")));
}

TEST_F(CliPipeline, FailedAuditExitsTwo) {
  Phase1(4);
  Gen(4);
  Phase2();
  const auto& g = TestGroup();
  auto table = DecodeAuditTable(g, ReadDocument(f("table.json")));
  table.rows[2].cryptogram = g.Mul(table.rows[2].cryptogram, g.Generator());
  WriteDocument(f("bad.json"), EncodeAuditTable(g, table));
  const auto r = Faas({"audit", "--in", f("bad.json"), "--verification-out", f("v.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(ErrorKind(r), "verification-failed");
  EXPECT_FALSE(ReadDocument(f("v.json"))["overall"].get<bool>());
}

TEST_F(CliPipeline, SeededRunsAreReproducible) {
  Phase1(6);
  const std::string first = ReadFileContent(f("ct.json"));
  Phase1(6);
  EXPECT_EQ(ReadFileContent(f("ct.json")), first);
}

TEST_F(CliPipeline, BenchCoversEveryStep) {
  const auto r = Faas({"bench", "--profile", "test", "--n", "6", "--seed", "1", "--out",
                      f("bench.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Document doc = ReadDocument(f("bench.json"));
  std::set<std::string> steps;
  for (const auto& rec : doc["records"]) steps.insert(rec["step"].get<std::string>());
  for (std::string_view s :
       {bench_step::kKeyGeneration, bench_step::kKeyOwnershipProof, bench_step::kReconstructedKeys,
        bench_step::kOr8Proofs, bench_step::kTableDerivation, bench_step::kEncodingProof,
        bench_step::kSigning, bench_step::kSignatureCheck, bench_step::kKeyOwnershipVerification,
        bench_step::kReconstructedKeysCheck, bench_step::kOr8Verification,
        bench_step::kEncodingProofVerification, bench_step::kCryptogramSummation,
        bench_step::kTally, bench_step::kMetrics, bench_step::kPhaseTotal}) {
    EXPECT_TRUE(steps.count(std::string(s))) << s;
  }
}

TEST(Cli, ArgumentErrors) {
  EXPECT_EQ(Faas({}).code, 3);
  EXPECT_EQ(Faas({"phase1", "--n", "3"}).code, 3);
  const auto r = Faas({"setup", "--profile", "huge"});
  EXPECT_EQ(r.code, 3);
  const auto v = Faas({"verify"});
  EXPECT_EQ(v.code, 3);
  EXPECT_EQ(ErrorKind(v), "bad-argument");
  EXPECT_EQ(Faas({"gen", "--n", "3", "--rates", "0.5,0.5", "--out", "/dev/null"}).code, 3);
}

TEST(Cli, SetupPrintsParameters) {
  const auto r = Faas({"setup", "--profile", "toy"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ParseDocument(r.out)["params"], SetupGroup(Profile::kToy));
}

}  // namespace
}  // namespace faas
