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

#include "sepsisflow/clinical/imputation.h"

#include <algorithm>

namespace sepsisflow::clinical {
namespace {

// Imputes in place. Returns false if the series had no observation (left
// untouched in that case).
bool FillFromObservations(std::vector<Measurement>& out) {
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i]) seen.push_back(i);
  }
  if (seen.empty()) return false;

  for (std::size_t i = 0; i < seen.front(); ++i) out[i] = out[seen.front()];
  for (std::size_t i = seen.back() + 1; i < out.size(); ++i) out[i] = out[seen.back()];
  for (std::size_t k = 0; k + 1 < seen.size(); ++k) {
    const std::size_t a = seen[k];
    const std::size_t b = seen[k + 1];
    const double va = *out[a];
    const double vb = *out[b];
    const double lo = std::min(va, vb);
    const double hi = std::max(va, vb);
    for (std::size_t i = a + 1; i < b; ++i) {
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      // Clamp guards the bracket against last-ulp rounding.
      out[i] = std::clamp(va + (vb - va) * t, lo, hi);
    }
  }
  return true;
}

}  // namespace

std::vector<double> ImputeSeries(std::span<const Measurement> series,
                                 double fallback) {
  if (series.empty()) {
    throw ImputationError("empty_series", "cannot impute an empty series");
  }
  std::vector<Measurement> filled(series.begin(), series.end());
  std::vector<double> out(series.size(), fallback);
  if (FillFromObservations(filled)) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = *filled[i];
  }
  return out;
}

std::vector<Measurement> LinearEdgeFillImputer::Impute(
    std::span<const Measurement> series, std::optional<double> fallback) const {
  if (series.empty()) {
    throw ImputationError("empty_series", "cannot impute an empty series");
  }
  std::vector<Measurement> out(series.begin(), series.end());
  if (!FillFromObservations(out) && fallback) {
    std::fill(out.begin(), out.end(), fallback);
  }
  return out;
}

const Imputer& DefaultImputer() {
  static const LinearEdgeFillImputer imputer;
  return imputer;
}

}  // namespace sepsisflow::clinical
