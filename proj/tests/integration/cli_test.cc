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


// End-to-end checks of the sepsisflow binary: exit codes, outputs and the
// serve lifecycle.

#include <signal.h>
#include <stdlib.h>

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <map>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "subprocess.h"
#include "test_util.h"

namespace sepsisflow::testing {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

std::string ModelPath() { return std::string(SEPSISFLOW_SOURCE_DIR) + "/models/reference_model.json"; }

std::map<std::string, std::string> StoreContents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = ReadFile(e.path());
  }
  return out;
}

// Minimal report file the `report` subcommand accepts.
std::string ReportJson(int replicas, double p95_ms, double avg_ms) {
  return json{{"vus", 1000},
              {"replicas", replicas},
              {"duration_s", 60.0},
              {"total_requests", 1000},
              {"successes", 1000},
              {"failures", 0},
              {"late_successes", 0},
              {"errors", {{"timeout", 0}, {"transport", 0}, {"http_status", 0}}},
              {"avg_ms", avg_ms},
              {"min_ms", 1.0},
              {"p50_ms", avg_ms},
              {"p90_ms", p95_ms * 0.9},
              {"p95_ms", p95_ms},
              {"p99_ms", p95_ms},
              {"max_ms", p95_ms * 2},
              {"failed_fraction", 0.0},
              {"percentile_method", "nearest-rank"},
              {"bytes_received", 0},
              {"bytes_sent", 0},
              {"iterations", {{"count", 1000}, {"avg_ms", avg_ms}, {"max_ms", p95_ms * 2}}},
              {"per_replica", json::object()},
              {"unattributed", 0},
              {"thresholds", {{"p95_ms", 500.0}, {"fail_rate", 0.01}}},
              {"threshold_verdicts", {{"p95", false}, {"fail_rate", true}, {"pass", false}}}}
      .dump();
}

class CliTest : public ::testing::Test {
 protected:
  fs::path Path(const std::string& name) const { return dir_.path() / name; }
  std::string Stderr() const { return ReadFile(dir_.path() / "stderr.txt"); }
  CommandResult Run(std::vector<std::string> args) {
    fs::remove(Path("stderr.txt"));
    return RunCli(std::move(args), Path("stderr.txt").string());
  }

  TempDir dir_;
};

TEST_F(CliTest, IngestFiveValidFiles) {
  const auto r = Run({"--json", "ingest", FixturePath("patients").string(), "--store",
                      Path("store").string()});
  ASSERT_EQ(r.exit_code, 0) << Stderr();
  const json j = json::parse(r.out);
  EXPECT_EQ(j["ok"], 5);
  EXPECT_EQ(j["failed"], 0);
  EXPECT_EQ(j["patients"].size(), 5u);
}

TEST_F(CliTest, IngestReportsMalformedFileAndFails) {
  fs::create_directories(Path("in"));
  int copied = 0;
  for (const auto& e : fs::directory_iterator(FixturePath("patients"))) {
    if (copied++ < 4) fs::copy_file(e.path(), Path("in") / e.path().filename());
  }
  WriteFile(Path("in/p999999.psv"), "HR|Temp|ICULOS\n80|37.0\n");
  const auto r = Run({"--json", "ingest", Path("in").string(), "--store", Path("store").string()});
  EXPECT_EQ(r.exit_code, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["ok"], 4);
  EXPECT_EQ(j["failed"], 1);
  ASSERT_EQ(j["errors"].size(), 1u);
  EXPECT_NE(j["errors"][0]["file"].get<std::string>().find("p999999.psv"), std::string::npos);
}

TEST_F(CliTest, IngestIsIdempotent) {
  const std::vector<std::string> args = {"ingest", FixturePath("patients").string(), "--store",
                                         Path("store").string()};
  ASSERT_EQ(Run(args).exit_code, 0);
  const auto first = StoreContents(Path("store"));
  ASSERT_EQ(Run(args).exit_code, 0);
  EXPECT_EQ(StoreContents(Path("store")), first);
  EXPECT_FALSE(first.empty());
}

TEST_F(CliTest, ReportCompareGivesDeltaP95) {
  WriteFile(Path("r3.json"), ReportJson(3, 3300, 2941.0));
  WriteFile(Path("r12.json"), ReportJson(12, 1410, 706.38));
  const auto text =
      Run({"report", "--compare", Path("r3.json").string(), Path("r12.json").string()});
  ASSERT_EQ(text.exit_code, 0) << Stderr();
  EXPECT_NE(text.out.find("12* | 706.38 | 1.27 | 1.41 | 2.82 | 0.00 | -57.3%"), std::string::npos)
      << text.out;
  const auto j = json::parse(
      Run({"--json", "report", "--compare", Path("r3.json").string(), Path("r12.json").string()})
          .out);
  EXPECT_EQ(j["rows"][1]["delta_p95_pct"], -57.3);
  EXPECT_EQ(j["rows"][1]["best"], true);
  EXPECT_EQ(j["rows"][0]["best"], false);
}

TEST_F(CliTest, SimulateSweepStarsTheMinimum) {
  const auto r = Run({"simulate", "--sweep", "3,8,12,24,48", "--threads", "12"});
  ASSERT_EQ(r.exit_code, 0) << Stderr();
  std::vector<std::string> lines;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 6u) << r.out;
  EXPECT_EQ(lines[3].rfind("12* | ", 0), 0u) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '*'), 1);
}

TEST_F(CliTest, MissingFileIsOperationalFailure) {
  const auto r = Run({"report", Path("absent.json").string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(Stderr().find("file_not_found"), std::string::npos) << Stderr();
  EXPECT_EQ(Run({"ingest", Path("absent-dir").string(), "--store", Path("s").string()}).exit_code, 1);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Run({}).exit_code, 2);
  EXPECT_EQ(Run({"no-such-command"}).exit_code, 2);
  EXPECT_EQ(Run({"scale"}).exit_code, 2);
  EXPECT_EQ(Run({"simulate", "--replicas", "0"}).exit_code, 2);
  EXPECT_EQ(Run({"simulate", "--vus", "many"}).exit_code, 2);
  EXPECT_EQ(Run({"loadtest", "--url", "ftp://example"}).exit_code, 2);
  EXPECT_EQ(Run({"--log-level", "loud", "simulate"}).exit_code, 2);
  EXPECT_EQ(Run({"calibrate", "--targets", "three"}).exit_code, 2);
  EXPECT_EQ(Run({"--help"}).exit_code, 0);
}

TEST_F(CliTest, ConfigPrecedenceFlagOverEnvOverFile) {
  WriteFile(Path("config.json"),
            R"({"simulation": {"vus": 10, "sim_duration_s": 6},
                "loadtest": {"target_url": "http://127.0.0.1:1", "duration_s": 1}})");
  const std::string config = Path("config.json").string();
  auto sim = json::parse(Run({"--config", config, "--json", "simulate"}).out);
  EXPECT_EQ(sim["config"]["vus"], 10);
  EXPECT_EQ(sim["config"]["sim_duration_s"], 6.0);
  sim = json::parse(Run({"--config", config, "--json", "simulate", "--vus", "20"}).out);
  EXPECT_EQ(sim["config"]["vus"], 20);

  // The unreachable target named in the error shows which source won.
  EXPECT_EQ(Run({"--config", config, "loadtest"}).exit_code, 1);
  EXPECT_NE(Stderr().find("127.0.0.1:1:"), std::string::npos) << Stderr();
  ::setenv("SEPSISFLOW_TARGET_URL", "http://127.0.0.1:2", 1);
  EXPECT_EQ(Run({"--config", config, "loadtest"}).exit_code, 1);
  EXPECT_NE(Stderr().find("127.0.0.1:2:"), std::string::npos) << Stderr();
  EXPECT_EQ(Run({"--config", config, "loadtest", "--url", "http://127.0.0.1:3"}).exit_code, 1);
  EXPECT_NE(Stderr().find("127.0.0.1:3:"), std::string::npos) << Stderr();
  ::unsetenv("SEPSISFLOW_TARGET_URL");
}

TEST_F(CliTest, TomlScenarioFile) {
  WriteFile(Path("scenario.toml"),
            "vus = 2\nduration_s = 1\ntarget_url = \"http://127.0.0.1:4\"\n[thresholds]\n"
            "p95_ms = 250\n");
  EXPECT_EQ(Run({"loadtest", "--scenario", Path("scenario.toml").string()}).exit_code, 1);
  EXPECT_NE(Stderr().find("127.0.0.1:4:"), std::string::npos) << Stderr();
  WriteFile(Path("broken.toml"), "vus = = 2\n");
  EXPECT_EQ(Run({"loadtest", "--scenario", Path("broken.toml").string()}).exit_code, 2);
}

TEST_F(CliTest, PredictUnknownPatientFails) {
  ASSERT_EQ(Run({"ingest", FixturePath("patients").string(), "--store", Path("store").string()})
                .exit_code,
            0);
  const auto ok = Run({"predict", "p000001", "--store", Path("store").string(), "--model",
                       ModelPath()});
  ASSERT_EQ(ok.exit_code, 0) << Stderr();
  EXPECT_EQ(json::parse(ok.out)["patient_id"], "p000001");
  EXPECT_EQ(Run({"predict", "p000001", "nobody", "--store", Path("store").string(), "--model",
                 ModelPath()})
                .exit_code,
            1);
}

TEST_F(CliTest, ServeScaleStatusAndGracefulStop) {
  ASSERT_EQ(Run({"ingest", FixturePath("patients").string(), "--store", Path("store").string()})
                .exit_code,
            0);
  Subprocess serve({CliPath(), "--log-level", "warn", "serve", "--replicas", "auto",
                    "--detected-threads", "3", "--port", "0", "--store", Path("store").string(),
                    "--model", ModelPath(), "--health-interval-ms", "100"},
                   Path("serve.log").string());
  std::map<std::string, std::string> banner;
  int port = 0;
  while (auto line = serve.ReadLine(30s)) {
    if (line->rfind("LISTENING ", 0) == 0) {
      port = std::stoi(line->substr(10));
      break;
    }
    const auto colon = line->find(": ");
    if (colon != std::string::npos) banner[line->substr(0, colon)] = line->substr(colon + 2);
  }
  ASSERT_GT(port, 0) << ReadFile(Path("serve.log"));
  EXPECT_EQ(banner["detected threads"], "3");
  EXPECT_EQ(banner["recommended replicas"], "3");
  EXPECT_EQ(banner["replicas"], "3");

  const std::string url = fmt::format("http://127.0.0.1:{}", port);
  auto status = json::parse(Run({"--json", "status", "--url", url}).out);
  EXPECT_EQ(status["healthy"], 3);
  EXPECT_EQ(status["replicas"].size(), 3u);

  ASSERT_EQ(Run({"scale", "2", "--url", url}).exit_code, 0) << Stderr();
  const auto deadline = std::chrono::steady_clock::now() + 20s;
  do {
    status = json::parse(Run({"--json", "status", "--url", url}).out);
    if (status["replicas"].size() == 2 && status["healthy"] == 2) break;
    std::this_thread::sleep_for(50ms);
  } while (std::chrono::steady_clock::now() < deadline);
  EXPECT_EQ(status["desired"], 2);
  EXPECT_EQ(status["replicas"].size(), 2u);
  EXPECT_EQ(Run({"scale", "0", "--url", url}).exit_code, 2);

  serve.Signal(SIGTERM);
  EXPECT_EQ(serve.Wait(), 0) << ReadFile(Path("serve.log"));
  EXPECT_EQ(Run({"status", "--url", url}).exit_code, 1);
}

}  // namespace
}  // namespace sepsisflow::testing
