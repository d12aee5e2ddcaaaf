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

#include "sepsisflow/clinical/scores.h"

#include <gtest/gtest.h>

#include <random>

namespace sepsisflow::clinical {
namespace {

HourlyRow Row(std::initializer_list<std::pair<const char*, double>> cells) {
  HourlyRow row;
  for (const auto& [name, value] : cells) row.Set(name, value);
  return row;
}

TEST(ComputeSirsTest, AllNormalScoresZero) {
  EXPECT_EQ(ComputeSirs(Row({{"Temp", 37.0}, {"HR", 80}, {"Resp", 16}, {"WBC", 8}})),
            0);
}

TEST(ComputeSirsTest, AllAbnormalScoresFour) {
  EXPECT_EQ(
      ComputeSirs(Row({{"Temp", 38.5}, {"HR", 110}, {"Resp", 24}, {"WBC", 15}})), 4);
}

TEST(ComputeSirsTest, CountsEachCriterionOnce) {
  // Both respiration conditions hold, still one point.
  EXPECT_EQ(ComputeSirs(Row({{"Resp", 24}, {"PaCO2", 30}})), 1);
  EXPECT_EQ(ComputeSirs(Row({{"Temp", 35.5}})), 1);
  EXPECT_EQ(ComputeSirs(Row({{"WBC", 3.0}})), 1);
}

TEST(ComputeSirsTest, BoundariesAreStrict) {
  EXPECT_EQ(ComputeSirs(Row({{"Temp", 38.0}, {"HR", 90}, {"Resp", 20}, {"WBC", 12}})),
            0);
}

TEST(ComputeSirsTest, AbsentInputsContributeNothing) {
  EXPECT_EQ(ComputeSirs(HourlyRow{}), 0);
}

TEST(ComputeSofaPartialTest, Coagulation) {
  EXPECT_EQ(ComputeSofaPartial(Row({{"Platelets", 90}})), 2);
  EXPECT_EQ(ComputeSofaPartial(Row({{"Platelets", 200}})), 0);
  EXPECT_EQ(ComputeSofaPartial(Row({{"Platelets", 10}})), 4);
}

TEST(ComputeSofaPartialTest, SumsAvailableSubscores) {
  // SaO2/FiO2 = 95/0.5 = 190 -> 3; MAP 65 -> 1; creatinine 2.5 -> 2.
  EXPECT_EQ(ComputeSofaPartial(
                Row({{"SaO2", 95}, {"FiO2", 0.5}, {"MAP", 65}, {"Creatinine", 2.5}})),
            6);
  // Liver cutoffs are inclusive.
  EXPECT_EQ(ComputeSofaPartial(Row({{"Bilirubin_total", 1.2}})), 1);
}

TEST(ComputeSofaPartialTest, NothingComputable) {
  EXPECT_FALSE(ComputeSofaPartial(HourlyRow{}).has_value());
  // Ratio needs both operands.
  EXPECT_FALSE(ComputeSofaPartial(Row({{"SaO2", 95}})).has_value());
}

// Moving one input further into the abnormal direction never lowers a score.
TEST(ScoresTest, MonotoneInAbnormalDirection) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const double hr = 40 + 120 * u(rng);
    const double temp = 34 + 7 * u(rng);
    const double platelets = 5 + 400 * u(rng);
    const double creatinine = 0.3 + 6 * u(rng);
    const double map = 40 + 80 * u(rng);
    const double step = 30 * u(rng);
    const HourlyRow base = Row({{"HR", hr},
                                {"Temp", temp},
                                {"Platelets", platelets},
                                {"Creatinine", creatinine},
                                {"MAP", map}});
    const HourlyRow worse = Row({{"HR", hr + step},
                                 {"Temp", temp + step / 10},
                                 {"Platelets", platelets - step},
                                 {"Creatinine", creatinine + step / 10},
                                 {"MAP", map - step}});
    ASSERT_LE(*ComputeSofaPartial(base), *ComputeSofaPartial(worse));
    if (temp > 37) ASSERT_LE(ComputeSirs(base), ComputeSirs(worse));
  }
}

}  // namespace
}  // namespace sepsisflow::clinical
