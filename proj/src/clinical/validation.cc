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

#include "sepsisflow/clinical/validation.h"

#include <map>

namespace sepsisflow::clinical {

ValidationReport VerifyRecord(const PatientRecord& record,
                              const ClinicalConfig& config) {
  ValidationReport report;
  report.row_count = record.rows.size();

  std::map<int, int> iculos_counts;
  for (const auto& row : record.rows) {
    if (row.iculos) ++iculos_counts[*row.iculos];
  }
  for (const auto& [hour, count] : iculos_counts) {
    if (count > 1) report.duplicate_iculos.push_back(hour);
  }

  for (std::size_t r = 0; r < record.rows.size(); ++r) {
    const HourlyRow& row = record.rows[r];
    for (const auto& [name, bound] : config.bounds) {
      const Measurement v = row.Get(name);
      if (v && !bound.Contains(*v)) {
        report.out_of_range.push_back({name, r, row.iculos, *v, bound});
      }
    }
  }

  if (!record.rows.empty()) {
    const double n = static_cast<double>(record.rows.size());
    for (std::size_t v = 0; v < kNumVariables; ++v) {
      std::size_t missing = 0;
      for (const auto& row : record.rows) missing += row.values[v] ? 0 : 1;
      report.missing_fraction[std::string(VariableName(v))] =
          static_cast<double>(missing) / n;
    }
  }
  return report;
}

}  // namespace sepsisflow::clinical
