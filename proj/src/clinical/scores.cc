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

#include "sepsisflow/clinical/scores.h"

namespace sepsisflow::clinical {

int ComputeSirs(const HourlyRow& row, const ClinicalConfig& config) {
  int score = 0;
  for (const auto& criterion : config.sirs) {
    for (const auto& cond : criterion.any_of) {
      const Measurement v = row.Get(cond.variable);
      if (!v) continue;
      const bool hit = cond.op == Comparison::kGreater ? *v > cond.value
                                                       : *v < cond.value;
      if (hit) {
        ++score;
        break;
      }
    }
  }
  return score;
}

std::optional<int> ComputeSofaPartial(const HourlyRow& row,
                                      const ClinicalConfig& config) {
  int total = 0;
  int computed = 0;
  for (const auto& sub : config.sofa) {
    Measurement input = row.Get(sub.variable);
    if (!input) continue;
    if (sub.denominator) {
      const Measurement d = row.Get(*sub.denominator);
      if (!d || *d == 0.0) continue;
      input = *input / *d;
    }
    ++computed;
    for (const double cutoff : sub.cutoffs) {
      const bool crossed = sub.direction == CutoffDirection::kBelow
                               ? *input < cutoff
                               : *input >= cutoff;
      total += crossed ? 1 : 0;
    }
  }
  if (computed == 0) return std::nullopt;
  return total;
}

}  // namespace sepsisflow::clinical
