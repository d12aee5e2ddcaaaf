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


#include "sepsisflow/loadgen/stats.h"

#include <algorithm>
#include <cmath>

namespace sepsisflow::loadgen {

double PercentileOfSorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw EmptySamples();
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error("invalid_quantile", "quantile must lie in [0, 1]");
  }
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double Percentile(std::vector<double> samples, double q) {
  std::sort(samples.begin(), samples.end());
  return PercentileOfSorted(samples, q);
}

void Thresholds::Validate() const {
  if (!(p95_ms > 0.0) || !(fail_rate > 0.0)) {
    throw Error("invalid_config", "thresholds must be positive");
  }
}

ThresholdVerdicts EvaluateThresholds(double p95_ms, double failed_fraction,
                                     const Thresholds& thresholds) {
  return {p95_ms < thresholds.p95_ms, failed_fraction < thresholds.fail_rate};
}

double DeltaP95Raw(double baseline_ms, double candidate_ms) {
  if (!(baseline_ms > 0.0)) {
    throw Error("invalid_baseline", "baseline p95 must be positive");
  }
  return 100.0 * (candidate_ms - baseline_ms) / baseline_ms;
}

double DeltaP95(double baseline_ms, double candidate_ms) {
  const double raw = DeltaP95Raw(baseline_ms, candidate_ms);
  const double rounded = std::round(raw * 10.0) / 10.0;
  return rounded == 0.0 ? 0.0 : rounded;
}

}  // namespace sepsisflow::loadgen
