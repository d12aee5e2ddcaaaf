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


#include "sepsisflow/loadgen/report.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace sepsisflow::loadgen {
namespace {

// fmt prints -0.0 as "-0.0"; tables should not.
double NoNegativeZero(double v) { return v == 0.0 ? 0.0 : v; }

std::string Megabytes(std::uint64_t bytes) {
  return fmt::format("{:.1f}", static_cast<double>(bytes) / 1e6);
}

}  // namespace

void Summarize(const std::vector<double>& latencies_ms, std::uint64_t failures,
               LoadTestReport& report) {
  report.total_requests = latencies_ms.size();
  report.failures = failures;
  report.successes = report.total_requests - failures;
  if (latencies_ms.empty()) {
    report.avg_ms = report.min_ms = report.p50_ms = report.p90_ms = report.p95_ms =
        report.p99_ms = report.max_ms = 0.0;
    report.failed_fraction = 0.0;
    report.verdicts = {};
    return;
  }
  std::vector<double> sorted = latencies_ms;
  std::sort(sorted.begin(), sorted.end());
  report.avg_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                  static_cast<double>(sorted.size());
  // Guard avg <= max against summation rounding.
  report.avg_ms = std::min(report.avg_ms, sorted.back());
  report.min_ms = sorted.front();
  report.p50_ms = PercentileOfSorted(sorted, 0.50);
  report.p90_ms = PercentileOfSorted(sorted, 0.90);
  report.p95_ms = PercentileOfSorted(sorted, 0.95);
  report.p99_ms = PercentileOfSorted(sorted, 0.99);
  report.max_ms = sorted.back();
  report.failed_fraction =
      static_cast<double>(failures) / static_cast<double>(report.total_requests);
  report.verdicts = EvaluateThresholds(report);
}

ThresholdVerdicts EvaluateThresholds(const LoadTestReport& report) {
  if (report.total_requests == 0) throw EmptyReport();
  return EvaluateThresholds(report.p95_ms, report.failed_fraction, report.thresholds);
}

nlohmann::json ToJson(const LoadTestReport& r) {
  nlohmann::json per_replica = nlohmann::json::object();
  for (const auto& [id, n] : r.per_replica) per_replica[id] = n;
  nlohmann::json j = {
      {"vus", r.vus},
      {"duration_s", r.duration_s},
      {"total_requests", r.total_requests},
      {"successes", r.successes},
      {"failures", r.failures},
      {"errors", {{"timeout", r.timeouts},
                  {"transport", r.transport_errors},
                  {"http_status", r.http_errors}}},
      {"late_successes", r.late_successes},
      {"percentile_method", kPercentileMethod},
      {"avg_ms", r.avg_ms},
      {"min_ms", r.min_ms},
      {"p50_ms", r.p50_ms},
      {"p90_ms", r.p90_ms},
      {"p95_ms", r.p95_ms},
      {"p99_ms", r.p99_ms},
      {"max_ms", r.max_ms},
      {"failed_fraction", r.failed_fraction},
      {"bytes_received", r.bytes_received},
      {"bytes_sent", r.bytes_sent},
      {"iterations", {{"count", r.iterations.count},
                      {"avg_ms", r.iterations.avg_ms},
                      {"max_ms", r.iterations.max_ms}}},
      {"per_replica", per_replica},
      {"unattributed", r.unattributed},
      {"thresholds", {{"p95_ms", r.thresholds.p95_ms},
                      {"fail_rate", r.thresholds.fail_rate}}},
      {"threshold_verdicts", {{"p95", r.verdicts.p95_pass},
                              {"fail_rate", r.verdicts.fail_rate_pass},
                              {"pass", r.verdicts.pass()}}},
  };
  j["replicas"] = r.replicas ? nlohmann::json(*r.replicas) : nlohmann::json(nullptr);
  return j;
}

LoadTestReport ReportFromJson(const nlohmann::json& j) {
  try {
    LoadTestReport r;
    r.vus = j.at("vus").get<int>();
    if (j.contains("replicas") && !j["replicas"].is_null()) {
      r.replicas = j["replicas"].get<int>();
    }
    r.duration_s = j.value("duration_s", 0.0);
    r.total_requests = j.at("total_requests").get<std::uint64_t>();
    r.failures = j.value("failures", std::uint64_t{0});
    r.successes = j.value("successes", r.total_requests - r.failures);
    if (j.contains("errors")) {
      const auto& e = j["errors"];
      r.timeouts = e.value("timeout", std::uint64_t{0});
      r.transport_errors = e.value("transport", std::uint64_t{0});
      r.http_errors = e.value("http_status", std::uint64_t{0});
    }
    r.late_successes = j.value("late_successes", std::uint64_t{0});
    r.avg_ms = j.at("avg_ms").get<double>();
    r.min_ms = j.value("min_ms", 0.0);
    r.p50_ms = j.value("p50_ms", 0.0);
    r.p90_ms = j.at("p90_ms").get<double>();
    r.p95_ms = j.at("p95_ms").get<double>();
    r.p99_ms = j.value("p99_ms", 0.0);
    r.max_ms = j.at("max_ms").get<double>();
    r.failed_fraction = j.at("failed_fraction").get<double>();
    r.bytes_received = j.value("bytes_received", std::uint64_t{0});
    r.bytes_sent = j.value("bytes_sent", std::uint64_t{0});
    if (j.contains("iterations")) {
      const auto& it = j["iterations"];
      r.iterations = {it.value("count", std::uint64_t{0}), it.value("avg_ms", 0.0),
                      it.value("max_ms", 0.0)};
    }
    if (j.contains("per_replica")) {
      for (const auto& [id, n] : j["per_replica"].items()) {
        r.per_replica[id] = n.get<std::uint64_t>();
      }
    }
    r.unattributed = j.value("unattributed", std::uint64_t{0});
    if (j.contains("thresholds")) {
      r.thresholds.p95_ms = j["thresholds"].value("p95_ms", r.thresholds.p95_ms);
      r.thresholds.fail_rate = j["thresholds"].value("fail_rate", r.thresholds.fail_rate);
    }
    r.verdicts = r.total_requests > 0
                     ? EvaluateThresholds(r.p95_ms, r.failed_fraction, r.thresholds)
                     : ThresholdVerdicts{};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed_report", e.what());
  }
}

std::string RenderLoadRow(const LoadTestReport& r) {
  if (r.total_requests == 0) throw EmptyReport();
  return fmt::format("{} | {:.2f} | {:.1f} | {:.1f} | {:.0f} | {:.2f} | {} | {}", r.vus,
                     r.avg_ms, r.p90_ms, r.p95_ms, r.max_ms,
                     NoNegativeZero(100.0 * r.failed_fraction), Megabytes(r.bytes_received),
                     Megabytes(r.bytes_sent));
}

std::string RenderLoadTable(const std::vector<LoadTestReport>& reports) {
  std::string out =
      "VUs | Avg (ms) | p90 (ms) | p95 (ms) | Max (ms) | Failed (%) | Recv (MB) | Sent (MB)\n";
  for (const auto& r : reports) out += RenderLoadRow(r) + "\n";
  return out;
}

std::string RenderComparisonRow(const ComparisonRow& row, double baseline_p95_ms,
                                bool best) {
  const LoadTestReport& r = row.report;
  if (r.total_requests == 0) throw EmptyReport();
  return fmt::format("{}{} | {:.2f} | {:.2f} | {:.2f} | {:.2f} | {:.2f} | {:.1f}%",
                     row.label, best ? "*" : "", r.avg_ms, r.p90_ms / 1000.0,
                     r.p95_ms / 1000.0, r.max_ms / 1000.0,
                     NoNegativeZero(100.0 * r.failed_fraction),
                     DeltaP95(baseline_p95_ms, r.p95_ms));
}

std::string RenderComparisonTable(const std::vector<ComparisonRow>& rows,
                                  double baseline_p95_ms,
                                  const std::string& baseline_label) {
  if (rows.empty()) throw EmptyReport();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    if (row.report.total_requests == 0) throw EmptyReport();
    best = std::min(best, row.report.p95_ms);
  }
  std::string out = "Replicas | Avg (ms) | p90 (s) | p95 (s) | Max (s) | Failed (%) | "
                    "Delta p95 vs. " + baseline_label + "\n";
  for (const auto& row : rows) {
    out += RenderComparisonRow(row, baseline_p95_ms, row.report.p95_ms == best) + "\n";
  }
  return out;
}

}  // namespace sepsisflow::loadgen
