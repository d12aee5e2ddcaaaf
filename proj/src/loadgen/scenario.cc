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


#include "sepsisflow/loadgen/scenario.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include <spdlog/spdlog.h>

#include "sepsisflow/loadgen/http_client.h"

namespace sepsisflow::loadgen {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Per-VU accumulator; merged after every VU has finished.
struct VuResult {
  std::vector<double> latencies_ms;
  std::vector<double> iteration_ms;
  std::uint64_t failures = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t transport_errors = 0;
  std::uint64_t http_errors = 0;
  std::uint64_t late_successes = 0;
  std::uint64_t unattributed = 0;
  std::map<std::string, std::uint64_t> per_replica;
  std::uint64_t bytes_sent = 0;
  std::uint64_t bytes_received = 0;
};

std::vector<std::string> FetchPatientIds(const Url& url, int timeout_ms) {
  HttpConnection conn(url.host, url.port);
  const HttpResponse resp = conn.Request("GET", url.base_path + "/patients", "",
                                         std::chrono::milliseconds(timeout_ms));
  if (resp.status != 200) {
    throw TargetUnreachable("GET /patients answered " + std::to_string(resp.status));
  }
  try {
    return nlohmann::json::parse(resp.body).at("patients").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw TargetUnreachable(std::string("GET /patients: ") + e.what());
  }
}

void RunVu(const ScenarioConfig& cfg, const Url& url, int index, Clock::time_point start,
           Clock::time_point end, std::atomic<std::uint64_t>& budget, VuResult& out) {
  const auto offset = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(cfg.ramp_up_s * index / cfg.vus));
  std::this_thread::sleep_until(start + offset);

  std::mt19937_64 rng(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(index));
  std::uniform_int_distribution<std::size_t> pick(0, cfg.patient_id_pool.size() - 1);
  HttpConnection conn(url.host, url.port);
  const std::string path = url.base_path + "/predict";
  const auto timeout = std::chrono::milliseconds(cfg.request_timeout_ms);

  while (Clock::now() < end) {
    if (cfg.max_requests > 0) {
      std::uint64_t left = budget.load();
      do {
        if (left == 0) break;
      } while (!budget.compare_exchange_weak(left, left - 1));
      if (left == 0) break;
    }
    const auto iteration_start = Clock::now();
    const std::string body =
        nlohmann::json{{"patient_id", cfg.patient_id_pool[pick(rng)]}}.dump();

    const auto sent_at = Clock::now();
    bool ok = false;
    double latency = 0.0;
    try {
      const HttpResponse resp = conn.Request("POST", path, body, timeout);
      latency = MsSince(sent_at);
      ok = resp.status >= 200 && resp.status < 300;
      if (ok) {
        const auto it = resp.headers.find("x-replica-id");
        if (it != resp.headers.end()) {
          ++out.per_replica[it->second];
        } else {
          ++out.unattributed;
        }
        if (latency > cfg.thresholds.p95_ms) ++out.late_successes;
      } else {
        ++out.http_errors;
      }
    } catch (const TimeoutError&) {
      latency = MsSince(sent_at);
      ++out.timeouts;
    } catch (const TransportError&) {
      latency = MsSince(sent_at);
      ++out.transport_errors;
    }
    if (!ok) ++out.failures;
    out.latencies_ms.push_back(latency);
    out.iteration_ms.push_back(MsSince(iteration_start));
  }
  out.bytes_sent = conn.bytes_sent();
  out.bytes_received = conn.bytes_received();
}

}  // namespace

void ScenarioConfig::Validate() const {
  if (vus < 1) throw Error("invalid_config", "vus must be >= 1");
  if (!(duration_s > 0.0) && max_requests == 0) {
    throw Error("invalid_config", "duration_s must be positive");
  }
  if (ramp_up_s < 0.0) throw Error("invalid_config", "ramp_up_s must be >= 0");
  if (request_timeout_ms < 1) {
    throw Error("invalid_config", "request_timeout_ms must be positive");
  }
  thresholds.Validate();
  ParseUrl(target_url);
}

void ScenarioConfig::Merge(const nlohmann::json& j) {
  try {
    if (j.contains("vus")) vus = j["vus"].get<int>();
    if (j.contains("duration_s")) duration_s = j["duration_s"].get<double>();
    if (j.contains("ramp_up_s")) ramp_up_s = j["ramp_up_s"].get<double>();
    if (j.contains("target_url")) target_url = j["target_url"].get<std::string>();
    if (j.contains("patient_id_pool")) {
      patient_id_pool = j["patient_id_pool"].get<std::vector<std::string>>();
    }
    if (j.contains("request_timeout_ms")) {
      request_timeout_ms = j["request_timeout_ms"].get<int>();
    }
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      thresholds.p95_ms = t.value("p95_ms", thresholds.p95_ms);
      thresholds.fail_rate = t.value("fail_rate", thresholds.fail_rate);
    }
    if (j.contains("max_requests")) max_requests = j["max_requests"].get<std::uint64_t>();
    if (j.contains("replicas") && !j["replicas"].is_null()) {
      replicas = j["replicas"].get<int>();
    }
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid_config", e.what());
  }
}

nlohmann::json ToJson(const ScenarioConfig& c) {
  return {{"vus", c.vus},
          {"duration_s", c.duration_s},
          {"ramp_up_s", c.ramp_up_s},
          {"target_url", c.target_url},
          {"patient_id_pool", c.patient_id_pool},
          {"request_timeout_ms", c.request_timeout_ms},
          {"thresholds", {{"p95_ms", c.thresholds.p95_ms},
                          {"fail_rate", c.thresholds.fail_rate}}},
          {"max_requests", c.max_requests},
          {"replicas", c.replicas ? nlohmann::json(*c.replicas) : nlohmann::json(nullptr)},
          {"seed", c.seed}};
}

LoadTestReport RunScenario(const ScenarioConfig& input) {
  input.Validate();
  ScenarioConfig cfg = input;
  const Url url = ParseUrl(cfg.target_url);

  const int probe_ms = std::min(cfg.request_timeout_ms, 5000);
  try {
    HttpConnection probe(url.host, url.port);
    probe.Request("GET", url.base_path + "/health", "", std::chrono::milliseconds(probe_ms));
  } catch (const Error& e) {
    throw TargetUnreachable(cfg.target_url + ": " + e.what());
  }
  if (cfg.patient_id_pool.empty()) {
    try {
      cfg.patient_id_pool = FetchPatientIds(url, probe_ms);
    } catch (const TargetUnreachable&) {
      throw;
    } catch (const Error& e) {
      throw TargetUnreachable(cfg.target_url + ": " + e.what());
    }
  }
  if (cfg.patient_id_pool.empty()) throw TargetUnreachable("no patient ids to query");

  spdlog::info("loadtest start vus={} duration_s={} ramp_up_s={} target={}", cfg.vus,
               cfg.duration_s, cfg.ramp_up_s, cfg.target_url);
  std::vector<VuResult> results(cfg.vus);
  std::atomic<std::uint64_t> budget{cfg.max_requests};
  const auto start = Clock::now();
  const auto end = cfg.max_requests > 0 && !(cfg.duration_s > 0.0)
                       ? Clock::time_point::max()
                       : start + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(cfg.duration_s));
  {
    std::vector<std::jthread> vus;
    vus.reserve(cfg.vus);
    for (int i = 0; i < cfg.vus; ++i) {
      vus.emplace_back([&, i] { RunVu(cfg, url, i, start, end, budget, results[i]); });
    }
  }

  LoadTestReport report;
  report.vus = cfg.vus;
  report.replicas = cfg.replicas;
  report.thresholds = cfg.thresholds;
  report.duration_s = MsSince(start) / 1000.0;
  std::vector<double> latencies;
  std::vector<double> iterations;
  std::uint64_t failures = 0;
  for (const VuResult& r : results) {
    latencies.insert(latencies.end(), r.latencies_ms.begin(), r.latencies_ms.end());
    iterations.insert(iterations.end(), r.iteration_ms.begin(), r.iteration_ms.end());
    failures += r.failures;
    report.timeouts += r.timeouts;
    report.transport_errors += r.transport_errors;
    report.http_errors += r.http_errors;
    report.late_successes += r.late_successes;
    report.unattributed += r.unattributed;
    report.bytes_sent += r.bytes_sent;
    report.bytes_received += r.bytes_received;
    for (const auto& [id, n] : r.per_replica) report.per_replica[id] += n;
  }
  Summarize(latencies, failures, report);
  report.iterations.count = iterations.size();
  if (!iterations.empty()) {
    double sum = 0.0;
    for (double v : iterations) sum += v;
    report.iterations.avg_ms = sum / static_cast<double>(iterations.size());
    report.iterations.max_ms = *std::max_element(iterations.begin(), iterations.end());
  }
  spdlog::info("loadtest done requests={} failed={} p95_ms={:.1f}", report.total_requests,
               report.failures, report.p95_ms);
  return report;
}

}  // namespace sepsisflow::loadgen
