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


// Latency statistics and pass/fail verdicts for load tests.

#ifndef SEPSISFLOW_LOADGEN_STATS_H_
#define SEPSISFLOW_LOADGEN_STATS_H_

#include <string>
#include <vector>

#include "sepsisflow/common/error.h"

namespace sepsisflow::loadgen {

inline constexpr const char* kPercentileMethod = "nearest-rank";

class EmptySamples : public Error {
 public:
  EmptySamples() : Error("empty_samples", "percentile of an empty sample set") {}
};

// Nearest-rank percentile: the value at 1-based rank ceil(q * N) of the
// ascending samples, clamped to [1, N]. q in [0, 1].
double Percentile(std::vector<double> samples, double q);
// Same, for samples already sorted ascending.
double PercentileOfSorted(const std::vector<double>& sorted, double q);

struct Thresholds {
  double p95_ms = 500.0;
  double fail_rate = 0.01;

  // Throws Error("invalid_config") unless both are positive.
  void Validate() const;
};

struct ThresholdVerdicts {
  bool p95_pass = false;
  bool fail_rate_pass = false;

  bool pass() const { return p95_pass && fail_rate_pass; }
};

// Both comparisons are strict.
ThresholdVerdicts EvaluateThresholds(double p95_ms, double failed_fraction,
                                     const Thresholds& thresholds);

// 100 * (candidate - baseline) / baseline.
double DeltaP95Raw(double baseline_ms, double candidate_ms);
// DeltaP95Raw rounded half away from zero to one decimal.
double DeltaP95(double baseline_ms, double candidate_ms);

}  // namespace sepsisflow::loadgen

#endif  // SEPSISFLOW_LOADGEN_STATS_H_
