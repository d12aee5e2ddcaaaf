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

#include "sepsisflow/clinical/columns.h"

namespace sepsisflow::gbdt {

FeatureVector ExtractFeatures(const clinical::ClinicalDocument& doc,
                              const std::vector<std::string>& feature_names,
                              int at_iculos) {
  const auto hour = doc.HourIndex(at_iculos);
  if (!hour) {
    const std::string range = doc.iculos.empty()
                                  ? "empty axis"
                                  : std::to_string(doc.iculos.front()) + ".." +
                                        std::to_string(doc.iculos.back());
    throw IculosOutOfRange(at_iculos, "hour " + std::to_string(at_iculos) +
                                          " is not on the axis of patient '" + doc.patient_id +
                                          "' (" + range + ")");
  }
  const std::size_t h = *hour;

  FeatureVector out(feature_names.size());
  for (std::size_t i = 0; i < feature_names.size(); ++i) {
    const std::string& name = feature_names[i];
    if (const clinical::Series* series = doc.FindSeries(name)) {
      out[i] = series->values[h];
    } else if (name == clinical::kIculosColumn) {
      out[i] = static_cast<double>(at_iculos);
    } else if (name == "SIRS") {
      out[i] = static_cast<double>(doc.derived_scores.sirs[h]);
    } else if (name == "SOFA") {
      if (const auto sofa = doc.derived_scores.sofa[h]) out[i] = static_cast<double>(*sofa);
    } else {
      out[i] = doc.demographics.Get(name);
    }
  }
  return out;
}

FeatureVector ExtractFeatures(const clinical::ClinicalDocument& doc,
                              const TreeEnsembleModel& model, int at_iculos) {
  return ExtractFeatures(doc, model.feature_names, at_iculos);
}

}  // namespace sepsisflow::gbdt
