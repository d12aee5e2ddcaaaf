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


#include "sepsisflow/sim/calibrate.h"

#include <limits>
#include <string>

namespace sepsisflow::sim {

std::vector<double> CalibrationGrid::Linspace(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidConfig("grid needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * i / (steps - 1);
  return out;
}

CalibrationGrid CalibrationGrid::Default() {
  return {Linspace(4.0, 16.0, 13), Linspace(0.0, 0.5, 11)};
}

nlohmann::json ToJson(const CalibrationResult& r) {
  nlohmann::json fitted = nlohmann::json::object();
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& [n, v] : r.fitted_p95_ms) fitted[std::to_string(n)] = v;
  for (const auto& [n, v] : r.residuals) residuals[std::to_string(n)] = v;
  return {{"config", ToJson(r.config)},
          {"objective", r.objective},
          {"fitted_p95_ms", fitted},
          {"residuals", residuals},
          {"underdetermined", r.underdetermined}};
}

CalibrationResult Calibrate(const SimConfig& base, const std::map<int, double>& targets,
                            const CalibrationGrid& grid) {
  if (targets.empty()) throw InvalidConfig("no calibration targets");
  if (grid.service_time_base_ms.empty() || grid.oversub_penalty.empty()) {
    throw InvalidConfig("empty calibration grid");
  }
  for (const auto& [replicas, p95] : targets) {
    if (replicas < 1 || !(p95 > 0.0)) throw InvalidConfig("bad calibration target");
  }
  base.Validate();

  CalibrationResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (double service : grid.service_time_base_ms) {
    for (double penalty : grid.oversub_penalty) {
      SimConfig cfg = base;
      cfg.service_time_base_ms = service;
      cfg.oversub_penalty = penalty;
      CalibrationResult candidate;
      candidate.config = cfg;
      for (const auto& [replicas, target] : targets) {
        SimConfig point = cfg;
        point.replicas = replicas;
        const double p95 = Simulate(point).metrics.p95_ms;
        const double rel = (p95 - target) / target;
        candidate.fitted_p95_ms[replicas] = p95;
        candidate.residuals[replicas] = rel;
        candidate.objective += rel * rel;
      }
      // Strict comparison keeps the first grid point on ties.
      if (candidate.objective < best.objective) best = std::move(candidate);
    }
  }
  bool any_oversubscribed = false;
  for (const auto& [replicas, target] : targets) {
    any_oversubscribed |= replicas > base.threads;
  }
  best.underdetermined = targets.size() < 2 || !any_oversubscribed;
  return best;
}

}  // namespace sepsisflow::sim
