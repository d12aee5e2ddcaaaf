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


// Grid search for the service time and oversubscription penalty that best
// reproduce measured p95 latencies.

#ifndef SEPSISFLOW_SIM_CALIBRATE_H_
#define SEPSISFLOW_SIM_CALIBRATE_H_

#include <map>
#include <vector>

#include "json.hpp"
#include "sepsisflow/sim/simulator.h"

namespace sepsisflow::sim {

struct CalibrationGrid {
  std::vector<double> service_time_base_ms;
  std::vector<double> oversub_penalty;

  // Inclusive evenly spaced values; steps >= 1.
  static std::vector<double> Linspace(double lo, double hi, int steps);
  static CalibrationGrid Default();
};

struct CalibrationResult {
  SimConfig config;
  // Sum of squared relative p95 errors over the targets.
  double objective = 0.0;
  std::map<int, double> fitted_p95_ms;
  // (fitted - target) / target per replica count.
  std::map<int, double> residuals;
  // Fewer targets than fitted parameters, or no target above the thread
  // count to pin the penalty.
  bool underdetermined = false;
};

nlohmann::json ToJson(const CalibrationResult& result);

// `targets` maps replica count to observed p95 in ms. Every other field of
// `base` is held fixed. Throws InvalidConfig on empty targets or grid.
CalibrationResult Calibrate(const SimConfig& base, const std::map<int, double>& targets,
                            const CalibrationGrid& grid = CalibrationGrid::Default());

}  // namespace sepsisflow::sim

#endif  // SEPSISFLOW_SIM_CALIBRATE_H_
