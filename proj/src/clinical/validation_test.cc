// Copyright 2026 The Sepsisflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepsisflow/clinical/validation.h"

#include <gtest/gtest.h>

#include "sepsisflow/clinical/psv.h"

namespace sepsisflow::clinical {
namespace {

TEST(VerifyRecordTest, FlagsDuplicateIculos) {
  const PatientRecord rec = ParsePsv("HR|ICULOS\n80|1\n81|2\n82|2\n", "p");
  const ValidationReport report = VerifyRecord(rec);
  EXPECT_EQ(report.duplicate_iculos, std::vector<int>{2});
  EXPECT_FALSE(report.clean());
}

TEST(VerifyRecordTest, FlagsOutOfRange) {
  ClinicalConfig config = ClinicalConfig::Default();
  ASSERT_EQ(config.bounds.at("HR"), (Bound{0, 300}));
  const PatientRecord rec = ParsePsv("HR|ICULOS\n-5|1\n80|2\n", "p");
  const ValidationReport report = VerifyRecord(rec, config);
  ASSERT_EQ(report.out_of_range.size(), 1u);
  EXPECT_EQ(report.out_of_range[0].variable, "HR");
  EXPECT_EQ(report.out_of_range[0].value, -5.0);
  EXPECT_EQ(report.out_of_range[0].iculos, 1);
}

TEST(VerifyRecordTest, MissingFractionIsDirectCount) {
  std::string text = "HR|ICULOS\n";
  // Three of ten HR cells absent.
  for (int h = 1; h <= 10; ++h) {
    text += (h == 2 || h == 5 || h == 9 ? "NaN" : "80") + std::string("|") +
            std::to_string(h) + "\n";
  }
  const PatientRecord rec = ParsePsv(text, "p");
  const ValidationReport report = VerifyRecord(rec);
  EXPECT_DOUBLE_EQ(report.missing_fraction.at("HR"), 0.30);
  EXPECT_DOUBLE_EQ(report.missing_fraction.at("Temp"), 1.0);
  EXPECT_EQ(report.missing_fraction.size(), kNumVariables);
}

TEST(VerifyRecordTest, DoesNotMutate) {
  const PatientRecord rec = ParsePsv("HR|ICULOS\n-5|2\n80|2\n", "p");
  const PatientRecord copy = rec;
  VerifyRecord(rec);
  EXPECT_EQ(rec, copy);
}

TEST(VerifyRecordTest, EmptyRecordHasNoFractions) {
  const ValidationReport report = VerifyRecord(ParsePsv("HR|ICULOS\n", "p"));
  EXPECT_EQ(report.row_count, 0u);
  EXPECT_TRUE(report.missing_fraction.empty());
  EXPECT_TRUE(report.clean());
}

}  // namespace
}  // namespace sepsisflow::clinical
