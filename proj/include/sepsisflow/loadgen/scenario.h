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


// Closed-loop virtual users against the prediction API.

#ifndef SEPSISFLOW_LOADGEN_SCENARIO_H_
#define SEPSISFLOW_LOADGEN_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepsisflow/common/error.h"
#include "sepsisflow/loadgen/report.h"
#include "sepsisflow/loadgen/stats.h"

namespace sepsisflow::loadgen {

class TargetUnreachable : public Error {
 public:
  explicit TargetUnreachable(const std::string& detail)
      : Error("target_unreachable", detail) {}
};

struct ScenarioConfig {
  int vus = 1;
  double duration_s = 10.0;
  // VUs start evenly spread over this window, then all run until the end.
  double ramp_up_s = 0.0;
  // Base URL of the API; requests go to <target_url>/predict.
  std::string target_url = "http://127.0.0.1:8000";
  // Empty: fetched from GET /patients before the run.
  std::vector<std::string> patient_id_pool;
  int request_timeout_ms = 60000;
  Thresholds thresholds;
  // Stop after this many requests in total; 0 runs for duration_s.
  std::uint64_t max_requests = 0;
  // Recorded in the report to label comparison tables.
  std::optional<int> replicas;
  std::uint64_t seed = 1;

  // Throws Error("invalid_config").
  void Validate() const;
  void Merge(const nlohmann::json& j);
};

nlohmann::json ToJson(const ScenarioConfig& config);

// Runs every VU to completion. Throws TargetUnreachable when GET /health
// gets no HTTP answer, or when no patient ids are available.
LoadTestReport RunScenario(const ScenarioConfig& config);

}  // namespace sepsisflow::loadgen

#endif  // SEPSISFLOW_LOADGEN_SCENARIO_H_
