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


// Load test results, their JSON form and the summary tables.

#ifndef SEPSISFLOW_LOADGEN_REPORT_H_
#define SEPSISFLOW_LOADGEN_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepsisflow/common/error.h"
#include "sepsisflow/loadgen/stats.h"

namespace sepsisflow::loadgen {

class EmptyReport : public Error {
 public:
  EmptyReport() : Error("empty_report", "report holds no requests") {}
};

struct IterationStats {
  std::uint64_t count = 0;
  double avg_ms = 0.0;
  double max_ms = 0.0;
};

struct LoadTestReport {
  int vus = 0;
  // Replicas behind the target, when known; labels comparison rows.
  std::optional<int> replicas;
  double duration_s = 0.0;
  std::uint64_t total_requests = 0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t transport_errors = 0;
  std::uint64_t http_errors = 0;
  // 2xx responses slower than the p95 threshold; also counted in successes.
  std::uint64_t late_successes = 0;
  double avg_ms = 0.0;
  double min_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
  double failed_fraction = 0.0;
  std::uint64_t bytes_received = 0;
  std::uint64_t bytes_sent = 0;
  IterationStats iterations;
  // Successful responses per X-Replica-Id value.
  std::map<std::string, std::uint64_t> per_replica;
  // Successful responses without a replica header.
  std::uint64_t unattributed = 0;
  Thresholds thresholds;
  ThresholdVerdicts verdicts;
};

// Fills the latency fields, counts and verdicts from raw per-request
// latencies; `failures` of them failed. Leaves byte and iteration fields.
void Summarize(const std::vector<double>& latencies_ms, std::uint64_t failures,
               LoadTestReport& report);

// Recomputes verdicts from the report's own p95, failure fraction and
// thresholds. Throws EmptyReport when no request was made.
ThresholdVerdicts EvaluateThresholds(const LoadTestReport& report);

nlohmann::json ToJson(const LoadTestReport& report);
// Throws Error("malformed_report").
LoadTestReport ReportFromJson(const nlohmann::json& j);

// One line per report, columns:
// VUs | Avg (ms) | p90 (ms) | p95 (ms) | Max (ms) | Failed (%) | Recv (MB) | Sent (MB)
// MB is 10^6 bytes. Throws EmptyReport for a report without requests.
std::string RenderLoadRow(const LoadTestReport& report);
std::string RenderLoadTable(const std::vector<LoadTestReport>& reports);

struct ComparisonRow {
  std::string label;
  LoadTestReport report;
};

// Replica comparison against a baseline p95, columns:
// Replicas | Avg (ms) | p90 (s) | p95 (s) | Max (s) | Failed (%) | Delta p95 vs. <baseline>
// The row with the lowest p95 gets a '*' after its label.
std::string RenderComparisonRow(const ComparisonRow& row, double baseline_p95_ms,
                                bool best);
std::string RenderComparisonTable(const std::vector<ComparisonRow>& rows,
                                  double baseline_p95_ms,
                                  const std::string& baseline_label);

}  // namespace sepsisflow::loadgen

#endif  // SEPSISFLOW_LOADGEN_REPORT_H_
