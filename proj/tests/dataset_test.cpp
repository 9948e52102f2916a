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

#include <sstream>

#include "support/test_support.hpp"

namespace faas {
namespace {

std::vector<LabeledSample> Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseCsv(in);
}

std::string KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

TEST(Csv, ParsesTriples) {
  const auto samples = Parse("A,Y,Yhat\n0,1,1\r\n1,0,0\n\n");
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(EncodeSample(samples[0]).value(), 4);
  EXPECT_EQ(EncodeSample(samples[1]).value(), 5);
}

TEST(Csv, RejectsBadValueWithLineNumber) {
  try {
    Parse("A,Y,Yhat\n0,0,0\n2,0,1\n");
    FAIL() << "expected malformed-csv";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "malformed-csv");
    EXPECT_NE(e.message().find("line 3"), std::string::npos) << e.message();
  }
  EXPECT_EQ(KindOf([] { Parse("A,Y,Yhat\n0,0\n"); }), "malformed-csv");
  EXPECT_EQ(KindOf([] { Parse("a,y,yhat\n0,0,0\n"); }), "malformed-csv");
  EXPECT_EQ(KindOf([] { Parse(""); }), "malformed-csv");
}

TEST(Csv, EmptyDataSection) {
  EXPECT_EQ(KindOf([] { Parse("A,Y,Yhat\n"); }), "no-samples");
}

TEST(Csv, RoundTrip) {
  const auto samples = testing::RandomSamples(40, 3);
  const auto back = Parse(FormatCsv(samples));
  ASSERT_EQ(back.size(), samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) EXPECT_EQ(back[i], samples[i]);
  testing::TempDir dir;
  WriteCsv(dir.file("s.csv"), samples);
  EXPECT_EQ(IngestCsv(dir.file("s.csv")).size(), 40u);
  EXPECT_EQ(KindOf([&] { IngestCsv(dir.file("missing.csv")); }), "io-error");
}

TEST(Synthetic, DeterministicPerSeed) {
  const auto rates = PresetRates("skewed");
  EXPECT_EQ(FormatCsv(GenSynthetic(200, rates, 9)), FormatCsv(GenSynthetic(200, rates, 9)));
  EXPECT_NE(FormatCsv(GenSynthetic(200, rates, 9)), FormatCsv(GenSynthetic(200, rates, 10)));
}

TEST(Synthetic, DegenerateRates) {
  const PermutationRates only8 = {0, 0, 0, 0, 0, 0, 0, 1};
  for (const auto& s : GenSynthetic(25, only8, 1)) {
    EXPECT_TRUE(s.a && s.y && s.yhat);
  }
  const auto csv = FormatCsv(GenSynthetic(2, only8, 1));
  EXPECT_EQ(csv, "A,Y,Yhat\n1,1,1\n1,1,1\n");
}

TEST(Synthetic, FrequenciesFollowRates) {
  const auto rates = PresetRates("minority");
  const auto counts = DeclareCounts(GenSynthetic(20000, rates, 4));
  for (int k = 0; k < 8; ++k) {
    const double freq = static_cast<double>(counts.values[k]) / 20000.0;
    // 5 standard deviations of a binomial proportion.
    const double tol = 5 * std::sqrt(rates[k] * (1 - rates[k]) / 20000.0);
    EXPECT_NEAR(freq, rates[k], tol) << k + 1;
  }
}

TEST(Rates, ParseAndValidate) {
  const auto r = ParseRates("0.1,0.1,0.1,0.1,0.1,0.1,0.2,0.2");
  EXPECT_DOUBLE_EQ(r[7], 0.2);
  EXPECT_EQ(KindOf([] { ParseRates("0.5,0.5"); }), "bad-rates");
  EXPECT_EQ(KindOf([] { ParseRates("0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1"); }), "bad-rates");
  EXPECT_EQ(KindOf([] { ParseRates("x,0.1,0.1,0.1,0.1,0.1,0.2,0.2"); }), "bad-rates");
  EXPECT_EQ(KindOf([] { ParseRates("-0.1,0.2,0.1,0.1,0.1,0.2,0.2,0.2"); }), "bad-rates");
  for (const char* name : {"uniform", "balanced", "skewed", "minority"}) {
    EXPECT_NO_THROW(RequireRates(PresetRates(name))) << name;
  }
  EXPECT_EQ(KindOf([] { PresetRates("adult"); }), "bad-argument");
}

}  // namespace
}  // namespace faas
