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


// sepsisflow: one binary for ingestion, serving, load testing and simulation.

#include <iostream>

#include "common.h"

int main(int argc, char** argv) {
  using namespace sepsisflow::cli;
  CLI::App app{"Sepsis risk prediction platform and scaling toolkit", "sepsisflow"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--config", global.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_flag("--json", global.json, "Machine-readable output on stdout");
  app.add_option("--log-level", global.log_level, "trace, debug, info, warn, error or off")
      ->capture_default_str();

  Action action;
  RegisterIngest(app, global, action);
  RegisterServe(app, global, action);
  RegisterWorker(app, global, action);
  RegisterScale(app, global, action);
  RegisterStatus(app, global, action);
  RegisterPredict(app, global, action);
  RegisterLoadtest(app, global, action);
  RegisterReport(app, global, action);
  RegisterSimulate(app, global, action);
  RegisterSweep(app, global, action);
  RegisterCalibrate(app, global, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    SetupLogging(global.log_level);
    return action();
  } catch (const sepsisflow::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: internal_error: " << e.what() << "\n";
    return kExitFailure;
  }
}
