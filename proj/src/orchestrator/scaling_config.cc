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


#include "sepsisflow/orchestrator/scaling_config.h"

#include <thread>

namespace sepsisflow::orchestrator {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& detail) { throw Error("invalid_config", detail); }

int ParseInt(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  Invalid(name + "='" + text + "' is not an integer");
}

template <typename T>
void Take(const json& j, const char* key, T& field) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    field = it->get<T>();
  } catch (const json::exception&) {
    Invalid(std::string("'") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view ToString(DispatchPolicy policy) {
  return policy == DispatchPolicy::kRoundRobin ? "round_robin" : "least_outstanding";
}

DispatchPolicy DispatchPolicyFromString(std::string_view text) {
  if (text == "round_robin") return DispatchPolicy::kRoundRobin;
  if (text == "least_outstanding") return DispatchPolicy::kLeastOutstanding;
  Invalid("unknown dispatch_policy '" + std::string(text) + "'");
}

void ScalingConfig::Validate() const {
  if (replicas < 1) Invalid("replicas must be >= 1");
  if (detected_threads < 1) Invalid("detected_threads must be >= 1");
  if (health_interval_ms < 1) Invalid("health_interval_ms must be >= 1");
  if (restart_backoff_ms < 0) Invalid("restart_backoff_ms must be >= 0");
  if (max_backoff_ms < restart_backoff_ms) Invalid("max_backoff_ms must be >= restart_backoff_ms");
  if (failure_threshold < 1) Invalid("failure_threshold must be >= 1");
  if (probe_timeout_ms < 1) Invalid("probe_timeout_ms must be >= 1");
  if (front_port < 0 || front_port > 65535) Invalid("front_port out of range");
  if (front_threads < 0) Invalid("front_threads must be >= 0");
}

void ScalingConfig::Merge(const json& j) {
  if (!j.is_object()) Invalid("orchestrator config must be a JSON object");
  Take(j, "replicas", replicas);
  Take(j, "detected_threads", detected_threads);
  if (j.contains("dispatch_policy")) {
    std::string policy;
    Take(j, "dispatch_policy", policy);
    dispatch_policy = DispatchPolicyFromString(policy);
  }
  Take(j, "health_interval_ms", health_interval_ms);
  Take(j, "restart_backoff_ms", restart_backoff_ms);
  Take(j, "max_backoff_ms", max_backoff_ms);
  Take(j, "failure_threshold", failure_threshold);
  Take(j, "probe_timeout_ms", probe_timeout_ms);
  Take(j, "startup_timeout_ms", startup_timeout_ms);
  Take(j, "request_timeout_ms", request_timeout_ms);
  Take(j, "front_host", front_host);
  Take(j, "front_port", front_port);
  Take(j, "front_threads", front_threads);
}

void ScalingConfig::MergeEnvironment(const service::EnvLookup& env) {
  const std::string p = service::kEnvPrefix;
  auto take_int = [&](const char* suffix, int& field) {
    if (auto v = env(p + suffix)) field = ParseInt(p + suffix, *v);
  };
  take_int("REPLICAS", replicas);
  take_int("DETECTED_THREADS", detected_threads);
  if (auto v = env(p + "DISPATCH_POLICY")) dispatch_policy = DispatchPolicyFromString(*v);
  take_int("HEALTH_INTERVAL_MS", health_interval_ms);
  take_int("RESTART_BACKOFF_MS", restart_backoff_ms);
  take_int("FRONT_PORT", front_port);
  take_int("FRONT_THREADS", front_threads);
}

json ToJson(const ScalingConfig& c) {
  return {{"replicas", c.replicas},
          {"detected_threads", c.detected_threads},
          {"dispatch_policy", ToString(c.dispatch_policy)},
          {"health_interval_ms", c.health_interval_ms},
          {"restart_backoff_ms", c.restart_backoff_ms},
          {"max_backoff_ms", c.max_backoff_ms},
          {"failure_threshold", c.failure_threshold},
          {"probe_timeout_ms", c.probe_timeout_ms},
          {"startup_timeout_ms", c.startup_timeout_ms},
          {"request_timeout_ms", c.request_timeout_ms},
          {"front_host", c.front_host},
          {"front_port", c.front_port},
          {"front_threads", c.front_threads}};
}

int DetectThreads(std::optional<int> override_threads) {
  if (override_threads && *override_threads >= 1) return *override_threads;
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace sepsisflow::orchestrator
