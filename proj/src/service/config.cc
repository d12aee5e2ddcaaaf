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


#include "sepsisflow/service/config.h"

#include <cstdlib>
#include <fstream>

namespace sepsisflow::service {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& detail) { throw Error("invalid_config", detail); }

template <typename T>
T ParseEnv(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_same_v<T, int>) {
      value = std::stoi(text, &used);
    } else {
      value = std::stod(text, &used);
    }
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    Invalid(name + "='" + text + "' is not a number");
  }
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

std::optional<std::string> ProcessEnv(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

void ServiceConfig::Validate() const {
  if (!(alert_threshold > 0.0 && alert_threshold < 1.0)) {
    Invalid("alert_threshold must lie in (0, 1), got " + std::to_string(alert_threshold));
  }
  if (port < 0 || port > 65535) Invalid("port out of range: " + std::to_string(port));
  if (threads < 1) Invalid("threads must be >= 1");
  if (replica_id.empty()) Invalid("replica_id must not be empty");
}

void ServiceConfig::Merge(const json& j) {
  if (!j.is_object()) Invalid("service config must be a JSON object");
  Take(j, "alert_threshold", alert_threshold);
  Take(j, "host", host);
  Take(j, "port", port);
  std::string path;
  if (j.contains("store_root")) {
    Take(j, "store_root", path);
    store_root = path;
  }
  if (j.contains("model_path")) {
    Take(j, "model_path", path);
    model_path = path;
  }
  Take(j, "replica_id", replica_id);
  Take(j, "threads", threads);
}

void ServiceConfig::MergeEnvironment(const EnvLookup& env) {
  const std::string p = kEnvPrefix;
  if (auto v = env(p + "ALERT_THRESHOLD")) {
    alert_threshold = ParseEnv<double>(p + "ALERT_THRESHOLD", *v);
  }
  if (auto v = env(p + "HOST")) host = *v;
  if (auto v = env(p + "PORT")) port = ParseEnv<int>(p + "PORT", *v);
  if (auto v = env(p + "STORE_ROOT")) store_root = *v;
  if (auto v = env(p + "MODEL_PATH")) model_path = *v;
  if (auto v = env(p + "REPLICA_ID")) replica_id = *v;
  if (auto v = env(p + "THREADS")) threads = ParseEnv<int>(p + "THREADS", *v);
}

json ToJson(const ServiceConfig& config) {
  return {{"alert_threshold", config.alert_threshold},
          {"host", config.host},
          {"port", config.port},
          {"store_root", config.store_root.string()},
          {"model_path", config.model_path.string()},
          {"replica_id", config.replica_id},
          {"threads", config.threads}};
}

json ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Invalid("cannot read config file " + path.string());
  try {
    json j = json::parse(in);
    if (!j.is_object()) Invalid(path.string() + ": top level must be an object");
    return j;
  } catch (const json::parse_error& e) {
    Invalid(path.string() + ": " + e.what());
  }
}

ServiceConfig LoadServiceConfig(const std::optional<std::filesystem::path>& file,
                                const EnvLookup& env) {
  ServiceConfig config;
  if (file) {
    const json j = ReadConfigFile(*file);
    config.Merge(j.contains("service") ? j.at("service") : j);
  }
  config.MergeEnvironment(env);
  config.Validate();
  return config;
}

}  // namespace sepsisflow::service
