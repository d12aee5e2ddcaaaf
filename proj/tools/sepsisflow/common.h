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


// Shared plumbing for the subcommands.

#ifndef SEPSISFLOW_TOOLS_SEPSISFLOW_COMMON_H_
#define SEPSISFLOW_TOOLS_SEPSISFLOW_COMMON_H_

#include <signal.h>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sepsisflow/common/error.h"
#include "sepsisflow/loadgen/http_client.h"
#include "sepsisflow/service/config.h"

namespace sepsisflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::optional<std::filesystem::path> config;
  bool json = false;
  std::string log_level = "info";
};

// Prediction service flags shared by worker, serve and predict. Each one,
// when given, overrides the environment and the config file.
struct ServiceFlags {
  std::optional<std::string> store_root;
  std::optional<std::string> model_path;
  std::optional<double> alert_threshold;
  std::optional<int> threads;

  void Add(CLI::App& sub);
  void Apply(service::ServiceConfig& config) const;
};

// Defaults < config file "service" section < environment < flags.
service::ServiceConfig ResolveServiceConfig(const GlobalOptions& global,
                                            const ServiceFlags& flags);

// A subcommand's body, run after parsing succeeds.
using Action = std::function<int()>;

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& detail) : Error("usage_error", detail) {}
};

// 2 for bad invocations and invalid configuration, 1 otherwise.
int ExitCodeFor(const Error& error);

// Routes spdlog to stderr at the given level name.
void SetupLogging(const std::string& level);

// The named object of the --config file, or an empty object.
nlohmann::json ConfigSection(const GlobalOptions& global, const std::string& key);

// Writes to `path`, or stdout for "-". Throws Error("io_error").
void WriteText(const std::string& path, const std::string& text);
std::string ReadText(const std::filesystem::path& path);

// Comma-separated integers, e.g. "3,8,12". Throws UsageError.
std::vector<int> ParseIntList(const std::string& text);

// Blocks SIGINT and SIGTERM for this thread and every thread started later,
// so Wait() can receive them synchronously. Construct before any thread.
class TerminationSignals {
 public:
  TerminationSignals();
  // Returns the signal number.
  int Wait();

 private:
  sigset_t set_;
};

// One request to a control endpoint; 10 s timeout.
loadgen::HttpResponse ControlRequest(const std::string& base_url, const std::string& method,
                                     const std::string& path, const std::string& body = "");

// Throws Error with the body's code when `resp` is not 2xx.
void RequireSuccess(const loadgen::HttpResponse& resp);

void RegisterIngest(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterServe(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterWorker(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterScale(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterStatus(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterPredict(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterLoadtest(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterReport(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterSimulate(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterSweep(CLI::App& app, const GlobalOptions& global, Action& action);
void RegisterCalibrate(CLI::App& app, const GlobalOptions& global, Action& action);

}  // namespace sepsisflow::cli

#endif  // SEPSISFLOW_TOOLS_SEPSISFLOW_COMMON_H_
