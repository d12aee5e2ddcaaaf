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

#include "sepsisflow/clinical/record.h"

#include <algorithm>

namespace sepsisflow::clinical {

std::string_view ToString(SourceHospital hospital) {
  switch (hospital) {
    case SourceHospital::kA:
      return "A";
    case SourceHospital::kB:
      return "B";
    case SourceHospital::kUnknown:
      break;
  }
  return "unknown";
}

SourceHospital SourceHospitalFromString(std::string_view text) {
  if (text == "A") return SourceHospital::kA;
  if (text == "B") return SourceHospital::kB;
  return SourceHospital::kUnknown;
}

Measurement HourlyRow::Get(std::string_view name) const {
  const auto index = VariableIndex(name);
  if (!index) return std::nullopt;
  return values[*index];
}

void HourlyRow::Set(std::string_view name, Measurement value) {
  if (const auto index = VariableIndex(name)) values[*index] = value;
}

bool PatientRecord::HasIculosColumn() const {
  return std::find(columns.begin(), columns.end(), kIculosColumn) !=
         columns.end();
}

}  // namespace sepsisflow::clinical
