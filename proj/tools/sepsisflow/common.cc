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


#include "common.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sepsisflow/service/config.h"

namespace sepsisflow::cli {

int ExitCodeFor(const Error& error) {
  const std::string& code = error.code();
  if (code == "usage_error" || code == "invalid_config" || code == "invalid_url" ||
      code == "invalid_scale") {
    return kExitUsage;
  }
  return kExitFailure;
}

void SetupLogging(const std::string& level) {
  auto logger = spdlog::stderr_color_mt("sepsisflow");
  spdlog::set_default_logger(logger);
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") {
    throw UsageError("unknown log level: " + level);
  }
  spdlog::set_level(parsed);
}

nlohmann::json ConfigSection(const GlobalOptions& global, const std::string& key) {
  if (!global.config) return nlohmann::json::object();
  const nlohmann::json file = service::ReadConfigFile(*global.config);
  if (!file.contains(key)) return nlohmann::json::object();
  if (!file[key].is_object()) throw Error("invalid_config", key + " must be an object");
  return file[key];
}

void WriteText(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("io_error", "cannot write " + path);
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("file_not_found", "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: " + text);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

TerminationSignals::TerminationSignals() {
  sigemptyset(&set_);
  sigaddset(&set_, SIGINT);
  sigaddset(&set_, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set_, nullptr);
}

int TerminationSignals::Wait() {
  int sig = 0;
  while (sigwait(&set_, &sig) != 0) {
  }
  return sig;
}

void ServiceFlags::Add(CLI::App& sub) {
  sub.add_option("--store", store_root, "Document store root");
  sub.add_option("--model", model_path, "Model file (JSON)");
  sub.add_option("--alert-threshold", alert_threshold, "Alert when probability exceeds this");
  sub.add_option("--worker-threads", threads, "HTTP worker threads per replica");
}

void ServiceFlags::Apply(service::ServiceConfig& config) const {
  if (store_root) config.store_root = *store_root;
  if (model_path) config.model_path = *model_path;
  if (alert_threshold) config.alert_threshold = *alert_threshold;
  if (threads) config.threads = *threads;
}

service::ServiceConfig ResolveServiceConfig(const GlobalOptions& global,
                                            const ServiceFlags& flags) {
  service::ServiceConfig config = service::LoadServiceConfig(global.config);
  flags.Apply(config);
  config.Validate();
  return config;
}

loadgen::HttpResponse ControlRequest(const std::string& base_url, const std::string& method,
                                     const std::string& path, const std::string& body) {
  const loadgen::Url url = loadgen::ParseUrl(base_url);
  loadgen::HttpConnection conn(url.host, url.port);
  return conn.Request(method, url.base_path + path, body, std::chrono::seconds(10));
}

void RequireSuccess(const loadgen::HttpResponse& resp) {
  if (resp.status >= 200 && resp.status < 300) return;
  std::string code = "http_" + std::to_string(resp.status);
  std::string detail = resp.body;
  try {
    const auto j = nlohmann::json::parse(resp.body);
    code = j.value("code", code);
    detail = j.value("detail", detail);
  } catch (const nlohmann::json::exception&) {
  }
  throw Error("request_failed", code + ": " + detail);
}

}  // namespace sepsisflow::cli
