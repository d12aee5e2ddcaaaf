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


#ifndef SEPSISFLOW_GBDT_FEATURES_H_
#define SEPSISFLOW_GBDT_FEATURES_H_

#include <string>
#include <vector>

#include "sepsisflow/clinical/document.h"
#include "sepsisflow/common/error.h"
#include "sepsisflow/gbdt/model.h"

namespace sepsisflow::gbdt {

class IculosOutOfRange : public Error {
 public:
  IculosOutOfRange(int at_iculos, const std::string& detail)
      : Error("iculos_out_of_range", detail), at_iculos_(at_iculos) {}
  int at_iculos() const { return at_iculos_; }

 private:
  int at_iculos_;
};

// Builds the vector for hour `at_iculos`. Vital and lab names read the
// imputed series, demographic names the last observed value, "ICULOS" the
// hour itself, "SIRS" and "SOFA" the derived scores. Any other name is absent.
FeatureVector ExtractFeatures(const clinical::ClinicalDocument& doc,
                              const std::vector<std::string>& feature_names,
                              int at_iculos);
FeatureVector ExtractFeatures(const clinical::ClinicalDocument& doc,
                              const TreeEnsembleModel& model, int at_iculos);

}  // namespace sepsisflow::gbdt

#endif  // SEPSISFLOW_GBDT_FEATURES_H_
