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


// loadtest and report.

#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <toml.hpp>

#include "common.h"
#include "sepsisflow/loadgen/report.h"
#include "sepsisflow/loadgen/scenario.h"

namespace sepsisflow::cli {
namespace {

namespace fs = std::filesystem;

// Scenario files are JSON, or TOML when the extension is .toml.
nlohmann::json ReadScenario(const std::string& path) {
  const std::string text = ReadText(path);
  try {
    if (fs::path(path).extension() == ".toml") {
      std::ostringstream as_json;
      as_json << toml::json_formatter{toml::parse(text, path)};
      return nlohmann::json::parse(as_json.str());
    }
    return nlohmann::json::parse(text);
  } catch (const toml::parse_error& e) {
    throw Error("invalid_config", path + ": " + std::string(e.description()));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("invalid_config", path + ": " + e.what());
  }
}

struct LoadtestOptions {
  std::optional<std::string> scenario;
  std::optional<int> vus;
  std::optional<double> duration_s;
  std::optional<double> ramp_up_s;
  std::optional<std::string> url;
  std::optional<int> timeout_ms;
  std::optional<std::uint64_t> max_requests;
  std::optional<int> replicas;
  std::optional<double> p95_ms;
  std::optional<double> fail_rate;
  std::vector<std::string> patients;
  std::optional<std::string> out;
  bool enforce = false;
};

std::string VerdictLine(const loadgen::LoadTestReport& r) {
  return fmt::format("p95 {:.1f} ms < {} ms: {} | failed {:.2f}% < {}%: {} | overall: {}",
                     r.p95_ms, r.thresholds.p95_ms, r.verdicts.p95_pass ? "pass" : "fail",
                     100.0 * r.failed_fraction, 100.0 * r.thresholds.fail_rate,
                     r.verdicts.fail_rate_pass ? "pass" : "fail",
                     r.verdicts.pass() ? "pass" : "fail");
}

int RunLoadtest(const GlobalOptions& global, const LoadtestOptions& opts) {
  // Defaults < config file < scenario file < environment < flags.
  loadgen::ScenarioConfig cfg;
  cfg.Merge(ConfigSection(global, "loadtest"));
  if (opts.scenario) {
    cfg.Merge(ReadScenario(*opts.scenario));
  }
  if (auto url = service::ProcessEnv(std::string(service::kEnvPrefix) + "TARGET_URL")) {
    cfg.target_url = *url;
  }
  if (opts.vus) cfg.vus = *opts.vus;
  if (opts.duration_s) cfg.duration_s = *opts.duration_s;
  if (opts.ramp_up_s) cfg.ramp_up_s = *opts.ramp_up_s;
  if (opts.url) cfg.target_url = *opts.url;
  if (opts.timeout_ms) cfg.request_timeout_ms = *opts.timeout_ms;
  if (opts.max_requests) cfg.max_requests = *opts.max_requests;
  if (opts.replicas) cfg.replicas = *opts.replicas;
  if (opts.p95_ms) cfg.thresholds.p95_ms = *opts.p95_ms;
  if (opts.fail_rate) cfg.thresholds.fail_rate = *opts.fail_rate;
  if (!opts.patients.empty()) cfg.patient_id_pool = opts.patients;
  cfg.Validate();

  const loadgen::LoadTestReport report = loadgen::RunScenario(cfg);
  nlohmann::json j = loadgen::ToJson(report);
  j["scenario"] = loadgen::ToJson(cfg);
  if (opts.out) WriteText(*opts.out, j.dump(2) + "\n");
  if (global.json) {
    std::cout << j.dump(2) << "\n";
  } else if (report.total_requests == 0) {
    std::cout << "no requests completed\n";
  } else {
    std::cout << loadgen::RenderLoadTable({report}) << VerdictLine(report) << "\n";
    if (report.late_successes > 0) {
      std::cout << fmt::format("late 2xx responses: {}\n", report.late_successes);
    }
  }
  if (report.total_requests == 0) throw loadgen::EmptyReport();
  return opts.enforce && !report.verdicts.pass() ? kExitFailure : kExitOk;
}

struct ReportOptions {
  std::vector<std::string> files;
  bool compare = false;
  std::optional<double> baseline_p95_ms;
  std::optional<std::string> out;
};

std::string RowLabel(const loadgen::LoadTestReport& r, const fs::path& file) {
  if (r.replicas) return std::to_string(*r.replicas);
  return file.stem().string();
}

int RunReport(const GlobalOptions& global, const ReportOptions& opts) {
  std::vector<loadgen::LoadTestReport> reports;
  for (const auto& file : opts.files) {
    try {
      reports.push_back(loadgen::ReportFromJson(nlohmann::json::parse(ReadText(file))));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("malformed_report", file + ": " + e.what());
    }
  }

  std::string text;
  nlohmann::json j;
  if (opts.compare) {
    if (reports.size() < 2 && !opts.baseline_p95_ms) {
      throw UsageError("--compare needs a baseline report and at least one more");
    }
    // The first file is the baseline unless a baseline p95 is given.
    const double baseline = opts.baseline_p95_ms.value_or(reports.front().p95_ms);
    const std::string baseline_label =
        opts.baseline_p95_ms ? fmt::format("{} ms", *opts.baseline_p95_ms)
                             : RowLabel(reports.front(), opts.files.front()) + " rep.";
    std::vector<loadgen::ComparisonRow> rows;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      rows.push_back({RowLabel(reports[i], opts.files[i]), reports[i]});
    }
    text = loadgen::RenderComparisonTable(rows, baseline, baseline_label);
    double best = reports.front().p95_ms;
    for (const auto& r : reports) best = std::min(best, r.p95_ms);
    nlohmann::json out_rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out_rows.push_back({{"label", rows[i].label},
                          {"file", opts.files[i]},
                          {"avg_ms", reports[i].avg_ms},
                          {"p90_ms", reports[i].p90_ms},
                          {"p95_ms", reports[i].p95_ms},
                          {"max_ms", reports[i].max_ms},
                          {"failed_fraction", reports[i].failed_fraction},
                          {"delta_p95_pct", loadgen::DeltaP95(baseline, reports[i].p95_ms)},
                          {"best", reports[i].p95_ms == best}});
    }
    j = {{"baseline_p95_ms", baseline}, {"baseline_label", baseline_label}, {"rows", out_rows}};
  } else {
    if (reports.empty()) throw UsageError("no report files given");
    text = loadgen::RenderLoadTable(reports);
    nlohmann::json out_rows = nlohmann::json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      nlohmann::json row = loadgen::ToJson(reports[i]);
      row["file"] = opts.files[i];
      out_rows.push_back(row);
    }
    j = {{"rows", out_rows}};
  }
  j["table"] = text;
  if (opts.out) WriteText(*opts.out, j.dump(2) + "\n");
  std::cout << (global.json ? j.dump(2) + "\n" : text);
  return kExitOk;
}

}  // namespace

void RegisterLoadtest(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<LoadtestOptions>();
  CLI::App* sub = app.add_subcommand("loadtest", "Closed-loop virtual users against /predict");
  sub->add_option("--scenario", opts->scenario, "Scenario file (.json or .toml)");
  sub->add_option("--vus", opts->vus, "Virtual users");
  sub->add_option("--duration", opts->duration_s, "Run length in seconds");
  sub->add_option("--ramp-up", opts->ramp_up_s, "Seconds over which VUs start");
  sub->add_option("--url", opts->url, "API base URL");
  sub->add_option("--timeout-ms", opts->timeout_ms, "Per-request timeout");
  sub->add_option("--max-requests", opts->max_requests, "Stop after this many requests");
  sub->add_option("--replicas", opts->replicas, "Replica count to record in the report");
  sub->add_option("--p95-ms", opts->p95_ms, "p95 threshold");
  sub->add_option("--fail-rate", opts->fail_rate, "Failure-rate threshold (fraction)");
  sub->add_option("--patient", opts->patients, "Patient id to query (repeatable)");
  sub->add_option("--out", opts->out, "Write the JSON report here");
  sub->add_flag("--enforce-thresholds", opts->enforce, "Exit 1 when a threshold fails");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunLoadtest(global, *opts); };
  });
}

void RegisterReport(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<ReportOptions>();
  CLI::App* sub = app.add_subcommand("report", "Tabulate load test reports");
  sub->add_option("files", opts->files, "Report JSON files")->required();
  sub->add_flag("--compare", opts->compare,
                "Replica comparison against the first file's p95");
  sub->add_option("--baseline-p95-ms", opts->baseline_p95_ms,
                  "Compare against this p95 instead of the first file");
  sub->add_option("--out", opts->out, "Write the JSON table here");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunReport(global, *opts); };
  });
}

}  // namespace sepsisflow::cli
