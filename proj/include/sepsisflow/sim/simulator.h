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


// Discrete-event model of R single-worker replicas sharing T hardware
// threads. CPU sharing is fluid processor sharing: with B busy replicas each
// one progresses at min(1, T/B) of full speed. Once B exceeds T every job is
// further slowed by (1 + oversub_penalty * max(0, R - T) / T) and pays
// context_switch_ms per quantum_ms of execution. This is a model of the
// slowdown, not a scheduler.

#ifndef SEPSISFLOW_SIM_SIMULATOR_H_
#define SEPSISFLOW_SIM_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepsisflow/common/error.h"
#include "sepsisflow/loadgen/report.h"

namespace sepsisflow::sim {

class InvalidConfig : public Error {
 public:
  explicit InvalidConfig(const std::string& detail) : Error("invalid_config", detail) {}
};

struct SimConfig {
  int replicas = 12;
  int threads = 12;
  // Closed loop: each VU sends, waits for the answer or the timeout, thinks,
  // and sends again. Used when arrival_rate_rps is 0.
  int vus = 1000;
  double think_time_ms = 0.0;
  // Open loop Poisson arrivals when > 0.
  double arrival_rate_rps = 0.0;
  // "round_robin" or "least_outstanding", as in the orchestrator.
  std::string dispatch = "round_robin";
  double service_time_base_ms = 8.5;
  // Coefficient of variation of the gamma service time; 0 is constant,
  // 1 is exponential.
  double service_cv = 0.5;
  double oversub_penalty = 0.11;
  double context_switch_ms = 0.05;
  double quantum_ms = 4.0;
  double sim_duration_s = 60.0;
  // Requests finishing before this time are left out of latency statistics.
  double warmup_s = 5.0;
  std::uint64_t seed = 1;
  double timeout_ms = 60000.0;

  // Throws InvalidConfig.
  void Validate() const;
  void Merge(const nlohmann::json& j);
};

nlohmann::json ToJson(const SimConfig& config);

struct SimReport {
  SimConfig config;
  // Client-side metrics after warm-up; bytes are not modelled and stay 0.
  loadgen::LoadTestReport metrics;
  // Every request over the whole run: arrivals = completions + failures +
  // in_flight_at_end.
  std::uint64_t arrivals = 0;
  std::uint64_t completions = 0;
  std::uint64_t failures = 0;
  std::uint64_t in_flight_at_end = 0;
  // Mean wall time a job spends on a replica's CPU, start to finish.
  double effective_service_time_ms = 0.0;
  // Server-side view, over the whole run, including work abandoned by
  // clients after a timeout. Queue lengths count jobs waiting behind a
  // busy replica, summed over replicas.
  double mean_queue_length = 0.0;
  std::uint64_t max_queue_length = 0;
  double mean_jobs_in_system = 0.0;
  double server_throughput_rps = 0.0;
  double mean_server_sojourn_ms = 0.0;
  // Time-averaged busy replicas over R, and busy threads over T.
  double utilization = 0.0;
  double cpu_utilization = 0.0;
};

nlohmann::json ToJson(const SimReport& report);

SimReport Simulate(const SimConfig& config);

// One report per replica count; every run uses config.seed.
std::vector<SimReport> SweepReplicas(const SimConfig& config,
                                     const std::vector<int>& replica_counts);

// Replica comparison table, deltas against the first report. The lowest p95
// row is starred.
std::string RenderSweepTable(const std::vector<SimReport>& reports);

}  // namespace sepsisflow::sim

#endif  // SEPSISFLOW_SIM_SIMULATOR_H_
