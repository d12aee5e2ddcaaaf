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

// Canonical variable table of the PhysioNet 2019 hourly layout.
//
// Every numeric clinical variable has a flat index in [0, kNumVariables):
// vitals first, then labs, then demographics. Group membership is derived
// from the index range.

#ifndef SEPSISFLOW_CLINICAL_COLUMNS_H_
#define SEPSISFLOW_CLINICAL_COLUMNS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace sepsisflow::clinical {

inline constexpr std::array<std::string_view, 8> kVitalNames = {
    "HR", "O2Sat", "Temp", "SBP", "MAP", "DBP", "Resp", "EtCO2"};

inline constexpr std::array<std::string_view, 26> kLabNames = {
    "BaseExcess", "HCO3",      "FiO2",       "pH",
    "PaCO2",      "SaO2",      "AST",        "BUN",
    "Alkalinephos", "Calcium", "Chloride",   "Creatinine",
    "Bilirubin_direct", "Glucose", "Lactate", "Magnesium",
    "Phosphate",  "Potassium", "Bilirubin_total", "TroponinI",
    "Hct",        "Hgb",       "PTT",        "WBC",
    "Fibrinogen", "Platelets"};

inline constexpr std::array<std::string_view, 5> kDemographicNames = {
    "Age", "Gender", "Unit1", "Unit2", "HospAdmTime"};

inline constexpr std::string_view kIculosColumn = "ICULOS";
inline constexpr std::string_view kLabelColumn = "SepsisLabel";

inline constexpr std::size_t kNumVitals = kVitalNames.size();
inline constexpr std::size_t kNumLabs = kLabNames.size();
inline constexpr std::size_t kNumDemographics = kDemographicNames.size();
inline constexpr std::size_t kNumVariables =
    kNumVitals + kNumLabs + kNumDemographics;

inline constexpr std::size_t kFirstLab = kNumVitals;
inline constexpr std::size_t kFirstDemographic = kNumVitals + kNumLabs;

enum class VariableGroup { kVital, kLab, kDemographic };

constexpr VariableGroup GroupOf(std::size_t index) {
  if (index < kFirstLab) return VariableGroup::kVital;
  if (index < kFirstDemographic) return VariableGroup::kLab;
  return VariableGroup::kDemographic;
}

constexpr std::string_view VariableName(std::size_t index) {
  if (index < kFirstLab) return kVitalNames[index];
  if (index < kFirstDemographic) return kLabNames[index - kFirstLab];
  return kDemographicNames[index - kFirstDemographic];
}

// Flat index of a canonical variable name, or nullopt.
constexpr std::optional<std::size_t> VariableIndex(std::string_view name) {
  for (std::size_t i = 0; i < kNumVariables; ++i) {
    if (VariableName(i) == name) return i;
  }
  return std::nullopt;
}

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_COLUMNS_H_
