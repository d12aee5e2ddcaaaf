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

#include "sepsisflow/clinical/alignment.h"

#include <map>

namespace sepsisflow::clinical {
namespace {

// Overlays `later` onto `merged`; present cells win.
void MergeInto(HourlyRow& merged, const HourlyRow& later) {
  for (std::size_t v = 0; v < kNumVariables; ++v) {
    if (later.values[v]) merged.values[v] = later.values[v];
  }
  if (later.sepsis_label) merged.sepsis_label = later.sepsis_label;
  for (const auto& [column, cell] : later.spill) merged.spill[column] = cell;
}

}  // namespace

PatientRecord AlignTemporal(const PatientRecord& record) {
  if (!record.HasIculosColumn()) {
    throw AlignmentError("no_timestamps",
                         "record " + record.patient_id + " has no ICULOS column");
  }
  // std::map keeps hours ordered; iterating rows in file order gives the
  // last-observation-wins merge.
  std::map<int, HourlyRow> by_hour;
  for (const auto& row : record.rows) {
    auto [it, inserted] = by_hour.try_emplace(*row.iculos, row);
    if (!inserted) MergeInto(it->second, row);
  }

  PatientRecord aligned = record;
  aligned.rows.clear();
  if (by_hour.empty()) return aligned;

  const int first = by_hour.begin()->first;
  const int last = by_hour.rbegin()->first;
  aligned.rows.reserve(static_cast<std::size_t>(last - first) + 1);
  for (int hour = first; hour <= last; ++hour) {
    const auto it = by_hour.find(hour);
    if (it != by_hour.end()) {
      aligned.rows.push_back(std::move(it->second));
    } else {
      HourlyRow gap;
      gap.iculos = hour;
      aligned.rows.push_back(std::move(gap));
    }
  }
  return aligned;
}

}  // namespace sepsisflow::clinical
