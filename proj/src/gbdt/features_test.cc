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


#include "sepsisflow/gbdt/features.h"

#include <gtest/gtest.h>

#include "json.hpp"
#include "sepsisflow/clinical/psv.h"
#include "test_util.h"

namespace sepsisflow::gbdt {
namespace {

using clinical::ClinicalDocument;
using nlohmann::json;

ClinicalDocument FixtureDocument() {
  return clinical::ToClinicalDocument(
      clinical::ReadPsvFile(::sepsisflow::testing::FixturePath("patients/p000002.psv")));
}

TEST(ExtractFeaturesTest, ReadsHourValue) {
  const ClinicalDocument doc =
      clinical::ToClinicalDocument(clinical::ParsePsv("HR|ICULOS\n80|4\n90|5\n", "p"));
  const FeatureVector fv = ExtractFeatures(doc, std::vector<std::string>{"HR"}, 5);
  EXPECT_EQ(fv, FeatureVector{90.0});
}

TEST(ExtractFeaturesTest, UnknownNameIsAbsent) {
  const ClinicalDocument doc =
      clinical::ToClinicalDocument(clinical::ParsePsv("HR|ICULOS\n80|1\n", "p"));
  const FeatureVector fv =
      ExtractFeatures(doc, std::vector<std::string>{"HR", "NotAFeature", "Age"}, 1);
  ASSERT_EQ(fv.size(), 3u);
  EXPECT_EQ(fv[0], 80.0);
  EXPECT_FALSE(fv[1].has_value());
  // Age never observed.
  EXPECT_FALSE(fv[2].has_value());
}

TEST(ExtractFeaturesTest, HourOffAxis) {
  const ClinicalDocument doc =
      clinical::ToClinicalDocument(clinical::ParsePsv("HR|ICULOS\n80|3\n81|4\n", "p"));
  for (int hour : {0, 2, 5, -1}) {
    try {
      ExtractFeatures(doc, std::vector<std::string>{"HR"}, hour);
      FAIL() << "expected IculosOutOfRange for " << hour;
    } catch (const IculosOutOfRange& e) {
      EXPECT_EQ(e.code(), "iculos_out_of_range");
      EXPECT_EQ(e.at_iculos(), hour);
    }
  }
}

// Every model feature against a hand-written source table, read from the
// serialized document rather than the in-memory accessors.
TEST(ExtractFeaturesTest, FixtureMatchesMappingTable) {
  const ClinicalDocument doc = FixtureDocument();
  const json j = json::parse(clinical::SerializeDocument(doc));
  const auto model = LoadModel(::sepsisflow::testing::FixturePath("model/reference_model.json"));

  enum Source { kVitals, kLabs, kDemographics, kHour, kSirs, kSofa };
  const std::vector<std::pair<std::string, Source>> table = {
      {"HR", kVitals}, {"O2Sat", kVitals}, {"Temp", kVitals}, {"SBP", kVitals},
      {"MAP", kVitals}, {"DBP", kVitals}, {"Resp", kVitals}, {"EtCO2", kVitals},
      {"BaseExcess", kLabs}, {"HCO3", kLabs}, {"FiO2", kLabs}, {"pH", kLabs},
      {"PaCO2", kLabs}, {"SaO2", kLabs}, {"AST", kLabs}, {"BUN", kLabs},
      {"Alkalinephos", kLabs}, {"Calcium", kLabs}, {"Chloride", kLabs},
      {"Creatinine", kLabs}, {"Bilirubin_direct", kLabs}, {"Glucose", kLabs},
      {"Lactate", kLabs}, {"Magnesium", kLabs}, {"Phosphate", kLabs},
      {"Potassium", kLabs}, {"Bilirubin_total", kLabs}, {"TroponinI", kLabs},
      {"Hct", kLabs}, {"Hgb", kLabs}, {"PTT", kLabs}, {"WBC", kLabs},
      {"Fibrinogen", kLabs}, {"Platelets", kLabs}, {"Age", kDemographics},
      {"Gender", kDemographics}, {"HospAdmTime", kDemographics}, {"ICULOS", kHour},
      {"SIRS", kSirs}, {"SOFA", kSofa},
  };
  ASSERT_EQ(model.feature_names.size(), table.size());

  const auto& axis = j["iculos"];
  for (std::size_t h = 0; h < axis.size(); ++h) {
    const int hour = axis[h].get<int>();
    const FeatureVector fv = ExtractFeatures(doc, model, hour);
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& [name, source] = table[i];
      ASSERT_EQ(model.feature_names[i], name);
      json expected;
      switch (source) {
        case kVitals: expected = j["vitals"][name]["values"][h]; break;
        case kLabs: expected = j["labs"][name]["values"][h]; break;
        case kDemographics: expected = j["demographics"][name]; break;
        case kHour: expected = hour; break;
        case kSirs: expected = j["derived_scores"]["sirs"][h]; break;
        case kSofa: expected = j["derived_scores"]["sofa"][h]; break;
      }
      if (expected.is_null()) {
        EXPECT_FALSE(fv[i].has_value()) << name << " @" << hour;
      } else {
        ASSERT_TRUE(fv[i].has_value()) << name << " @" << hour;
        EXPECT_EQ(*fv[i], expected.get<double>()) << name << " @" << hour;
      }
    }
  }
}

}  // namespace
}  // namespace sepsisflow::gbdt
