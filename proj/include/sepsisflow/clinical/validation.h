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

#ifndef SEPSISFLOW_CLINICAL_VALIDATION_H_
#define SEPSISFLOW_CLINICAL_VALIDATION_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepsisflow/clinical/config.h"
#include "sepsisflow/clinical/record.h"

namespace sepsisflow::clinical {

struct OutOfRangeFlag {
  std::string variable;
  std::size_t row_index = 0;
  std::optional<int> iculos;
  double value = 0.0;
  Bound bound;
};

struct ValidationReport {
  std::size_t row_count = 0;
  // Each ICULOS value that occurs more than once, ascending, listed once.
  std::vector<int> duplicate_iculos;
  std::vector<OutOfRangeFlag> out_of_range;
  // Fraction of rows where the variable is absent, for every canonical
  // variable. Empty when the record has no rows.
  std::map<std::string, double> missing_fraction;

  bool clean() const { return duplicate_iculos.empty() && out_of_range.empty(); }
};

// Report-only completeness and consistency check; never drops data.
ValidationReport VerifyRecord(const PatientRecord& record,
                              const ClinicalConfig& config = ClinicalConfig::Default());

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_VALIDATION_H_
