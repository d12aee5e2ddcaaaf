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

#include "sepsisflow/clinical/document.h"

#include <algorithm>

#include "sepsisflow/clinical/alignment.h"
#include "sepsisflow/clinical/scores.h"
#include "sepsisflow/clinical/validation.h"

namespace sepsisflow::clinical {
namespace {

using nlohmann::json;

constexpr const char* kHospitalKey = "hospital";

json MeasurementToJson(const Measurement& m) {
  return m ? json(*m) : json(nullptr);
}

Measurement MeasurementFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json SeriesMapToJson(const std::map<std::string, Series>& series) {
  json out = json::object();
  for (const auto& [name, s] : series) {
    json values = json::array();
    for (const auto& v : s.values) values.push_back(MeasurementToJson(v));
    json observed = json::array();
    for (const bool o : s.observed) observed.push_back(o);
    out[name] = {{"values", std::move(values)}, {"observed", std::move(observed)}};
  }
  return out;
}

std::map<std::string, Series> SeriesMapFromJson(const json& j) {
  std::map<std::string, Series> out;
  for (const auto& [name, s] : j.items()) {
    Series series;
    for (const auto& v : s.at("values")) series.values.push_back(MeasurementFromJson(v));
    for (const auto& o : s.at("observed")) series.observed.push_back(o.get<bool>());
    if (series.values.size() != series.observed.size()) {
      throw DocumentError("malformed_document",
                          "series '" + name + "': values/observed length differ");
    }
    out.emplace(name, std::move(series));
  }
  return out;
}

}  // namespace

std::size_t Series::ObservedCount() const {
  return static_cast<std::size_t>(std::count(observed.begin(), observed.end(), true));
}

Measurement Demographics::Get(const std::string& name) const {
  const auto it = values.find(name);
  return it == values.end() ? std::nullopt : it->second;
}

std::optional<std::size_t> ClinicalDocument::HourIndex(int hour) const {
  if (iculos.empty() || hour < iculos.front() || hour > iculos.back()) {
    return std::nullopt;
  }
  const auto index = static_cast<std::size_t>(hour - iculos.front());
  if (index < iculos.size() && iculos[index] == hour) return index;
  // Not contiguous (a hand-edited document); fall back to a scan.
  const auto it = std::find(iculos.begin(), iculos.end(), hour);
  if (it == iculos.end()) return std::nullopt;
  return static_cast<std::size_t>(it - iculos.begin());
}

const Series* ClinicalDocument::FindSeries(std::string_view name) const {
  const std::string key(name);
  if (const auto it = vitals.find(key); it != vitals.end()) return &it->second;
  if (const auto it = labs.find(key); it != labs.end()) return &it->second;
  return nullptr;
}

ClinicalDocument ToClinicalDocument(const PatientRecord& record,
                                    const ClinicalConfig& config,
                                    const Imputer& imputer) {
  if (record.rows.empty()) {
    throw DocumentError("empty_record", "record " + record.patient_id + " has no rows");
  }
  const ValidationReport report = VerifyRecord(record, config);
  const PatientRecord aligned = AlignTemporal(record);
  const std::size_t hours = aligned.rows.size();

  ClinicalDocument doc;
  doc.patient_id = record.patient_id;
  doc.iculos.reserve(hours);
  for (const auto& row : aligned.rows) doc.iculos.push_back(*row.iculos);

  // Imputed copy of every hour, used for the derived scores.
  std::vector<HourlyRow> imputed_rows = aligned.rows;

  for (std::size_t v = 0; v < kFirstDemographic; ++v) {
    const std::string name(VariableName(v));
    std::vector<Measurement> raw(hours);
    Series series;
    series.observed.resize(hours);
    for (std::size_t h = 0; h < hours; ++h) {
      raw[h] = aligned.rows[h].values[v];
      series.observed[h] = raw[h].has_value();
    }
    series.values = imputer.Impute(raw, config.Fallback(name));
    for (std::size_t h = 0; h < hours; ++h) imputed_rows[h].values[v] = series.values[h];
    auto& group = GroupOf(v) == VariableGroup::kVital ? doc.vitals : doc.labs;
    group.emplace(name, std::move(series));
  }

  for (std::size_t v = kFirstDemographic; v < kNumVariables; ++v) {
    Measurement last;
    for (const auto& row : aligned.rows) {
      if (row.values[v]) last = row.values[v];
    }
    doc.demographics.values[std::string(VariableName(v))] = last;
  }
  doc.demographics.hospital = record.source_hospital;

  doc.derived_scores.sirs.reserve(hours);
  doc.derived_scores.sofa.reserve(hours);
  for (const auto& row : imputed_rows) {
    doc.derived_scores.sirs.push_back(ComputeSirs(row, config));
    doc.derived_scores.sofa.push_back(ComputeSofaPartial(row, config));
  }

  doc.provenance.source_file = record.patient_id + ".psv";
  doc.provenance.transform_version = config.transform_version;
  doc.provenance.imputation_method = std::string(imputer.Tag());
  doc.provenance.unknown_columns = record.unknown_columns;
  doc.provenance.source_rows = record.rows.size();
  doc.provenance.duplicate_iculos = report.duplicate_iculos.size();
  doc.provenance.out_of_range_flags = report.out_of_range.size();
  return doc;
}

json ToJson(const ClinicalDocument& doc) {
  json demographics = json::object();
  for (const auto& [name, value] : doc.demographics.values) {
    demographics[name] = MeasurementToJson(value);
  }
  demographics[kHospitalKey] = std::string(ToString(doc.demographics.hospital));

  json sofa = json::array();
  for (const auto& s : doc.derived_scores.sofa) sofa.push_back(s ? json(*s) : json(nullptr));

  return {
      {"patient_id", doc.patient_id},
      {"demographics", std::move(demographics)},
      {"vitals", SeriesMapToJson(doc.vitals)},
      {"labs", SeriesMapToJson(doc.labs)},
      {"derived_scores", {{"sirs", doc.derived_scores.sirs}, {"sofa", std::move(sofa)}}},
      {"iculos", doc.iculos},
      {"provenance",
       {{"source_file", doc.provenance.source_file},
        {"transform_version", doc.provenance.transform_version},
        {"imputation_method", doc.provenance.imputation_method},
        {"unknown_columns", doc.provenance.unknown_columns},
        {"source_rows", doc.provenance.source_rows},
        {"duplicate_iculos", doc.provenance.duplicate_iculos},
        {"out_of_range_flags", doc.provenance.out_of_range_flags}}},
  };
}

ClinicalDocument DocumentFromJson(const json& j) {
  try {
    ClinicalDocument doc;
    doc.patient_id = j.at("patient_id").get<std::string>();
    for (const auto& [name, value] : j.at("demographics").items()) {
      if (name == kHospitalKey) {
        doc.demographics.hospital = SourceHospitalFromString(value.get<std::string>());
      } else {
        doc.demographics.values[name] = MeasurementFromJson(value);
      }
    }
    doc.vitals = SeriesMapFromJson(j.at("vitals"));
    doc.labs = SeriesMapFromJson(j.at("labs"));
    const json& scores = j.at("derived_scores");
    doc.derived_scores.sirs = scores.at("sirs").get<std::vector<int>>();
    for (const auto& s : scores.at("sofa")) {
      doc.derived_scores.sofa.push_back(s.is_null() ? std::nullopt
                                                    : std::optional<int>(s.get<int>()));
    }
    doc.iculos = j.at("iculos").get<std::vector<int>>();
    const json& p = j.at("provenance");
    doc.provenance.source_file = p.at("source_file").get<std::string>();
    doc.provenance.transform_version = p.at("transform_version").get<std::string>();
    doc.provenance.imputation_method = p.at("imputation_method").get<std::string>();
    doc.provenance.unknown_columns = p.at("unknown_columns").get<std::vector<std::string>>();
    doc.provenance.source_rows = p.at("source_rows").get<std::size_t>();
    doc.provenance.duplicate_iculos = p.at("duplicate_iculos").get<std::size_t>();
    doc.provenance.out_of_range_flags = p.at("out_of_range_flags").get<std::size_t>();

    const std::size_t hours = doc.iculos.size();
    auto check_length = [&](std::size_t n, const std::string& what) {
      if (n != hours) {
        throw DocumentError("malformed_document",
                            what + " length differs from the iculos axis");
      }
    };
    for (const auto& [name, s] : doc.vitals) check_length(s.values.size(), "vitals." + name);
    for (const auto& [name, s] : doc.labs) check_length(s.values.size(), "labs." + name);
    check_length(doc.derived_scores.sirs.size(), "derived_scores.sirs");
    check_length(doc.derived_scores.sofa.size(), "derived_scores.sofa");
    return doc;
  } catch (const json::exception& e) {
    throw DocumentError("malformed_document", e.what());
  }
}

std::string SerializeDocument(const ClinicalDocument& doc) {
  return ToJson(doc).dump();
}

ClinicalDocument ParseDocument(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError("malformed_document", e.what());
  }
  return DocumentFromJson(j);
}

}  // namespace sepsisflow::clinical
