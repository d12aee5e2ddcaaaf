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


#ifndef SEPSISFLOW_SERVICE_CONFIG_H_
#define SEPSISFLOW_SERVICE_CONFIG_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "sepsisflow/common/error.h"

namespace sepsisflow::service {

// Returns the value of an environment variable, or nullopt.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
std::optional<std::string> ProcessEnv(const std::string& name);

inline constexpr const char* kEnvPrefix = "SEPSISFLOW_";

struct ServiceConfig {
  // A prediction raises an alert when probability > alert_threshold.
  double alert_threshold = 0.5;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path store_root = "data/store";
  std::filesystem::path model_path = "models/reference_model.json";
  std::string replica_id = "replica-0";
  // HTTP worker threads per replica.
  int threads = 8;

  // Throws Error("invalid_config") on a violated field.
  void Validate() const;

  // Fields present in `j` override this config's values.
  void Merge(const nlohmann::json& j);
  // SEPSISFLOW_ALERT_THRESHOLD, SEPSISFLOW_HOST, SEPSISFLOW_PORT,
  // SEPSISFLOW_STORE_ROOT, SEPSISFLOW_MODEL_PATH, SEPSISFLOW_REPLICA_ID,
  // SEPSISFLOW_THREADS.
  void MergeEnvironment(const EnvLookup& env);
};

nlohmann::json ToJson(const ServiceConfig& config);

// Defaults, then the optional JSON file (its "service" object when present,
// else the whole file), then the environment.
ServiceConfig LoadServiceConfig(const std::optional<std::filesystem::path>& file,
                                const EnvLookup& env = ProcessEnv);

// Parses and validates a JSON config file into a json object.
nlohmann::json ReadConfigFile(const std::filesystem::path& path);

}  // namespace sepsisflow::service

#endif  // SEPSISFLOW_SERVICE_CONFIG_H_
