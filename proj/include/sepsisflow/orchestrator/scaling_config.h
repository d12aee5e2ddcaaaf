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


#ifndef SEPSISFLOW_ORCHESTRATOR_SCALING_CONFIG_H_
#define SEPSISFLOW_ORCHESTRATOR_SCALING_CONFIG_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sepsisflow/service/config.h"

namespace sepsisflow::orchestrator {

enum class DispatchPolicy { kRoundRobin, kLeastOutstanding };

std::string_view ToString(DispatchPolicy policy);
// "round_robin" or "least_outstanding"; throws Error("invalid_config").
DispatchPolicy DispatchPolicyFromString(std::string_view text);

struct ScalingConfig {
  int replicas = 1;
  // Host hardware threads; the recommended replica count.
  int detected_threads = 1;
  DispatchPolicy dispatch_policy = DispatchPolicy::kRoundRobin;
  int health_interval_ms = 1000;
  // First restart delay; doubles per consecutive restart up to max_backoff_ms.
  int restart_backoff_ms = 500;
  int max_backoff_ms = 10000;
  // Consecutive failed probes before a running replica is restarted.
  int failure_threshold = 3;
  int probe_timeout_ms = 2000;
  // A replica that is not healthy this long after launch is restarted.
  int startup_timeout_ms = 30000;
  // Upstream read timeout when forwarding.
  int request_timeout_ms = 60000;
  std::string front_host = "127.0.0.1";
  int front_port = 8000;
  // 0: one thread per client connection.
  int front_threads = 0;

  void Validate() const;
  void Merge(const nlohmann::json& j);
  // SEPSISFLOW_REPLICAS, SEPSISFLOW_DETECTED_THREADS, SEPSISFLOW_DISPATCH_POLICY,
  // SEPSISFLOW_HEALTH_INTERVAL_MS, SEPSISFLOW_RESTART_BACKOFF_MS,
  // SEPSISFLOW_FRONT_PORT, SEPSISFLOW_FRONT_THREADS.
  void MergeEnvironment(const service::EnvLookup& env);
};

nlohmann::json ToJson(const ScalingConfig& config);

// Logical CPUs of this host, or `override_threads` when given. Falls back to
// 1 when detection reports nothing.
int DetectThreads(std::optional<int> override_threads = std::nullopt);

}  // namespace sepsisflow::orchestrator

#endif  // SEPSISFLOW_ORCHESTRATOR_SCALING_CONFIG_H_
