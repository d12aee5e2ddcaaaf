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

#ifndef SEPSISFLOW_CLINICAL_RECORD_H_
#define SEPSISFLOW_CLINICAL_RECORD_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepsisflow/clinical/columns.h"

namespace sepsisflow::clinical {

// A single measurement. Missing values are nullopt, never a sentinel.
using Measurement = std::optional<double>;

enum class SourceHospital { kA, kB, kUnknown };

std::string_view ToString(SourceHospital hospital);
SourceHospital SourceHospitalFromString(std::string_view text);

// One hour of a patient's stay. `values` holds every canonical variable
// (vitals, labs, demographics) by flat index; see columns.h.
struct HourlyRow {
  std::optional<int> iculos;
  std::array<Measurement, kNumVariables> values{};
  std::optional<int> sepsis_label;
  // Cells of columns outside the canonical table, keyed by header name.
  std::map<std::string, std::string> spill;

  // Value of a canonical variable by name; nullopt for absent or unknown.
  Measurement Get(std::string_view name) const;
  void Set(std::string_view name, Measurement value);

  std::span<const Measurement, kNumVitals> vitals() const {
    return std::span<const Measurement, kNumVitals>(values.data(), kNumVitals);
  }
  std::span<const Measurement, kNumLabs> labs() const {
    return std::span<const Measurement, kNumLabs>(values.data() + kFirstLab,
                                                  kNumLabs);
  }
  std::span<const Measurement, kNumDemographics> demographics() const {
    return std::span<const Measurement, kNumDemographics>(
        values.data() + kFirstDemographic, kNumDemographics);
  }

  bool operator==(const HourlyRow&) const = default;
};

struct PatientRecord {
  std::string patient_id;
  SourceHospital source_hospital = SourceHospital::kUnknown;
  // Header exactly as read, after alias resolution.
  std::vector<std::string> columns;
  std::vector<std::string> unknown_columns;
  std::vector<HourlyRow> rows;

  bool HasIculosColumn() const;

  bool operator==(const PatientRecord&) const = default;
};

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_RECORD_H_
