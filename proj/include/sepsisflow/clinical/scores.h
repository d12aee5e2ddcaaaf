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

#ifndef SEPSISFLOW_CLINICAL_SCORES_H_
#define SEPSISFLOW_CLINICAL_SCORES_H_

#include <optional>

#include "sepsisflow/clinical/config.h"
#include "sepsisflow/clinical/record.h"

namespace sepsisflow::clinical {

// One point per satisfied SIRS criterion of `config.sirs`. Conditions whose
// input is absent are skipped, so the result is in [0, criteria count].
int ComputeSirs(const HourlyRow& row,
                const ClinicalConfig& config = ClinicalConfig::Default());

// Sum of the partial-SOFA sub-scores whose inputs are present. Returns
// nullopt when no sub-score is computable.
std::optional<int> ComputeSofaPartial(
    const HourlyRow& row, const ClinicalConfig& config = ClinicalConfig::Default());

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_SCORES_H_
