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

// The standardized per-patient clinical document and its JSON form.
// The JSON layout is described in docs/clinical_document.md.

#ifndef SEPSISFLOW_CLINICAL_DOCUMENT_H_
#define SEPSISFLOW_CLINICAL_DOCUMENT_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sepsisflow/clinical/config.h"
#include "sepsisflow/clinical/imputation.h"
#include "sepsisflow/clinical/record.h"
#include "sepsisflow/common/error.h"

namespace sepsisflow::clinical {

class DocumentError : public Error {
 public:
  using Error::Error;
};

// An imputed series on the document's hourly axis. `observed[i]` is true
// where values[i] came straight from the source file.
struct Series {
  std::vector<Measurement> values;
  std::vector<bool> observed;

  std::size_t ObservedCount() const;
  bool operator==(const Series&) const = default;
};

struct Demographics {
  // Last observed value of each demographic variable.
  std::map<std::string, Measurement> values;
  SourceHospital hospital = SourceHospital::kUnknown;

  Measurement Get(const std::string& name) const;
  bool operator==(const Demographics&) const = default;
};

struct DerivedScores {
  std::vector<int> sirs;
  std::vector<std::optional<int>> sofa;
  bool operator==(const DerivedScores&) const = default;
};

struct Provenance {
  std::string source_file;
  std::string transform_version;
  std::string imputation_method;
  std::vector<std::string> unknown_columns;
  std::size_t source_rows = 0;
  std::size_t duplicate_iculos = 0;
  std::size_t out_of_range_flags = 0;
  bool operator==(const Provenance&) const = default;
};

struct ClinicalDocument {
  std::string patient_id;
  Demographics demographics;
  std::map<std::string, Series> vitals;
  std::map<std::string, Series> labs;
  DerivedScores derived_scores;
  std::vector<int> iculos;
  Provenance provenance;

  // Position of `hour` on the axis, or nullopt.
  std::optional<std::size_t> HourIndex(int hour) const;
  // Vital or lab series by canonical name.
  const Series* FindSeries(std::string_view name) const;

  bool operator==(const ClinicalDocument&) const = default;
};

// verify -> align -> impute -> derived scores. Deterministic for a given
// record and config. Throws DocumentError("empty_record") for a record with
// no rows; alignment errors propagate.
ClinicalDocument ToClinicalDocument(
    const PatientRecord& record,
    const ClinicalConfig& config = ClinicalConfig::Default(),
    const Imputer& imputer = DefaultImputer());

nlohmann::json ToJson(const ClinicalDocument& doc);
ClinicalDocument DocumentFromJson(const nlohmann::json& j);

// Compact JSON with sorted keys; byte-identical for equal documents.
std::string SerializeDocument(const ClinicalDocument& doc);
// Throws DocumentError("malformed_document").
ClinicalDocument ParseDocument(std::string_view text);

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_DOCUMENT_H_
