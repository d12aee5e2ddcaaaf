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

#ifndef SEPSISFLOW_CLINICAL_IMPUTATION_H_
#define SEPSISFLOW_CLINICAL_IMPUTATION_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sepsisflow/clinical/record.h"
#include "sepsisflow/common/error.h"

namespace sepsisflow::clinical {

class ImputationError : public Error {
 public:
  using Error::Error;
};

// Fills a series on a contiguous hourly axis:
//  - interior gaps: linear interpolation between the nearest observations;
//  - leading gap: first observation carried backwards;
//  - trailing gap: last observation carried forwards;
//  - no observation at all: `fallback` everywhere.
// Observed entries are copied through unchanged. Throws
// ImputationError("empty_series") for an empty input.
std::vector<double> ImputeSeries(std::span<const Measurement> series,
                                 double fallback);

// Strategy seam for per-variable imputation, so that other methods (for
// example nearest-neighbour imputation across patients) can be swapped in.
class Imputer {
 public:
  virtual ~Imputer() = default;

  // With no fallback, an all-absent series stays all-absent.
  virtual std::vector<Measurement> Impute(std::span<const Measurement> series,
                                          std::optional<double> fallback) const = 0;

  // Recorded in document provenance.
  virtual std::string_view Tag() const = 0;
};

class LinearEdgeFillImputer final : public Imputer {
 public:
  std::vector<Measurement> Impute(std::span<const Measurement> series,
                                  std::optional<double> fallback) const override;
  std::string_view Tag() const override {
    return "linear-interpolation+edge-fill+population-fallback/v1";
  }
};

const Imputer& DefaultImputer();

}  // namespace sepsisflow::clinical

#endif  // SEPSISFLOW_CLINICAL_IMPUTATION_H_
