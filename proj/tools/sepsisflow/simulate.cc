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


// simulate and calibrate.

#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "common.h"
#include "sepsisflow/sim/calibrate.h"
#include "sepsisflow/sim/simulator.h"

namespace sepsisflow::cli {
namespace {

struct SimFlags {
  std::optional<int> replicas;
  std::optional<int> threads;
  std::optional<int> vus;
  std::optional<double> think_time_ms;
  std::optional<double> arrival_rate_rps;
  std::optional<std::string> dispatch;
  std::optional<double> service_ms;
  std::optional<double> service_cv;
  std::optional<double> penalty;
  std::optional<double> context_switch_ms;
  std::optional<double> quantum_ms;
  std::optional<double> duration_s;
  std::optional<double> warmup_s;
  std::optional<std::uint64_t> seed;
  std::optional<double> timeout_ms;

  void Add(CLI::App& sub, bool with_replicas = true) {
    if (with_replicas) sub.add_option("--replicas", replicas, "Replica count R");
    sub.add_option("--threads", threads, "Hardware threads T");
    sub.add_option("--vus", vus, "Closed-loop virtual users");
    sub.add_option("--think-ms", think_time_ms, "VU think time");
    sub.add_option("--arrival-rate", arrival_rate_rps, "Open-loop Poisson rate (req/s)");
    sub.add_option("--dispatch", dispatch, "round_robin or least_outstanding");
    sub.add_option("--service-ms", service_ms, "Mean service time");
    sub.add_option("--service-cv", service_cv, "Service time coefficient of variation");
    sub.add_option("--penalty", penalty, "Oversubscription penalty");
    sub.add_option("--context-switch-ms", context_switch_ms, "Cost per scheduling quantum");
    sub.add_option("--quantum-ms", quantum_ms, "Scheduling quantum");
    sub.add_option("--duration", duration_s, "Simulated seconds");
    sub.add_option("--warmup", warmup_s, "Seconds left out of statistics");
    sub.add_option("--seed", seed, "Random seed");
    sub.add_option("--timeout-ms", timeout_ms, "Client timeout");
  }

  // Defaults < config file "simulation" section < flags.
  sim::SimConfig Resolve(const GlobalOptions& global) const {
    sim::SimConfig c;
    c.Merge(ConfigSection(global, "simulation"));
    if (replicas) c.replicas = *replicas;
    if (threads) c.threads = *threads;
    if (vus) c.vus = *vus;
    if (think_time_ms) c.think_time_ms = *think_time_ms;
    if (arrival_rate_rps) c.arrival_rate_rps = *arrival_rate_rps;
    if (dispatch) c.dispatch = *dispatch;
    if (service_ms) c.service_time_base_ms = *service_ms;
    if (service_cv) c.service_cv = *service_cv;
    if (penalty) c.oversub_penalty = *penalty;
    if (context_switch_ms) c.context_switch_ms = *context_switch_ms;
    if (quantum_ms) c.quantum_ms = *quantum_ms;
    if (duration_s) c.sim_duration_s = *duration_s;
    if (warmup_s) c.warmup_s = *warmup_s;
    if (seed) c.seed = *seed;
    if (timeout_ms) c.timeout_ms = *timeout_ms;
    c.Validate();
    return c;
  }
};

struct SimulateOptions {
  SimFlags sim;
  std::optional<std::string> sweep;
  std::optional<std::string> out;
};

int RunSimulate(const GlobalOptions& global, const SimulateOptions& opts) {
  const sim::SimConfig cfg = opts.sim.Resolve(global);
  nlohmann::json j;
  std::string text;
  if (opts.sweep) {
    const auto reports = sim::SweepReplicas(cfg, ParseIntList(*opts.sweep));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) rows.push_back(sim::ToJson(r));
    text = sim::RenderSweepTable(reports);
    j = {{"reports", rows}, {"table", text}};
  } else {
    const sim::SimReport r = sim::Simulate(cfg);
    j = sim::ToJson(r);
    if (r.metrics.total_requests == 0) {
      text = "no requests completed after warm-up\n";
    } else {
      text = fmt::format(
          "R={} T={} | avg {:.2f} ms | p90 {:.1f} ms | p95 {:.1f} ms | max {:.1f} ms | "
          "failed {:.2f}% | throughput {:.1f} req/s | service {:.2f} ms | cpu {:.0f}%\n",
          cfg.replicas, cfg.threads, r.metrics.avg_ms, r.metrics.p90_ms, r.metrics.p95_ms,
          r.metrics.max_ms, 100.0 * r.metrics.failed_fraction, r.server_throughput_rps,
          r.effective_service_time_ms, 100.0 * r.cpu_utilization);
    }
  }
  if (opts.out) WriteText(*opts.out, j.dump(2) + "\n");
  std::cout << (global.json ? j.dump(2) + "\n" : text);
  return kExitOk;
}

struct CalibrateOptions {
  SimFlags sim;
  std::string targets;
  std::optional<std::string> service_grid;
  std::optional<std::string> penalty_grid;
  std::optional<std::string> out;
};

// "3=3300,8=1530"
std::map<int, double> ParseTargets(const std::string& text) {
  std::map<int, double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument(item);
      out[std::stoi(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("targets look like 3=3300,12=1410; got " + text);
    }
  }
  if (out.empty()) throw UsageError("no calibration targets");
  return out;
}

// "lo:hi:steps"
std::vector<double> ParseGrid(const std::string& text) {
  double lo = 0, hi = 0;
  int steps = 0;
  char c1 = 0, c2 = 0;
  std::stringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1) {
    throw UsageError("grid looks like lo:hi:steps; got " + text);
  }
  return sim::CalibrationGrid::Linspace(lo, hi, steps);
}

int RunCalibrate(const GlobalOptions& global, const CalibrateOptions& opts) {
  const sim::SimConfig base = opts.sim.Resolve(global);
  sim::CalibrationGrid grid = sim::CalibrationGrid::Default();
  if (opts.service_grid) grid.service_time_base_ms = ParseGrid(*opts.service_grid);
  if (opts.penalty_grid) grid.oversub_penalty = ParseGrid(*opts.penalty_grid);
  const sim::CalibrationResult fit = sim::Calibrate(base, ParseTargets(opts.targets), grid);
  const nlohmann::json j = sim::ToJson(fit);
  if (opts.out) WriteText(*opts.out, j.dump(2) + "\n");
  if (global.json) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << fmt::format("service_time_base_ms={} oversub_penalty={} objective={:.4f}{}\n",
                           fit.config.service_time_base_ms, fit.config.oversub_penalty,
                           fit.objective, fit.underdetermined ? " (underdetermined)" : "");
  std::cout << "replicas | fitted p95 (ms) | residual\n";
  for (const auto& [replicas, residual] : fit.residuals) {
    std::cout << fmt::format("{} | {:.1f} | {:+.3f}\n", replicas,
                             fit.fitted_p95_ms.at(replicas), residual);
  }
  return kExitOk;
}

}  // namespace

void RegisterSimulate(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<SimulateOptions>();
  CLI::App* sub = app.add_subcommand("simulate", "Queueing model of replicas on CPU threads");
  opts->sim.Add(*sub);
  sub->add_option("--sweep", opts->sweep, "Comma-separated replica counts, e.g. 3,8,12,24,48");
  sub->add_option("--out", opts->out, "Write the JSON result here");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunSimulate(global, *opts); };
  });
}

void RegisterSweep(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<SimulateOptions>();
  CLI::App* sub = app.add_subcommand("sweep", "Simulate a list of replica counts");
  opts->sim.Add(*sub, false);
  sub->add_option("--replicas", opts->sweep, "Comma-separated replica counts, e.g. 3,8,12,24,48")
      ->required();
  sub->add_option("--out", opts->out, "Write the JSON result here");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunSimulate(global, *opts); };
  });
}

void RegisterCalibrate(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<CalibrateOptions>();
  CLI::App* sub = app.add_subcommand(
      "calibrate", "Fit service time and oversubscription penalty to measured p95 values");
  opts->sim.Add(*sub);
  sub->add_option("--targets", opts->targets, "Replica count to p95 ms, e.g. 3=3300,12=1410")
      ->required();
  sub->add_option("--service-grid", opts->service_grid, "lo:hi:steps for service time");
  sub->add_option("--penalty-grid", opts->penalty_grid, "lo:hi:steps for the penalty");
  sub->add_option("--out", opts->out, "Write the JSON result here");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunCalibrate(global, *opts); };
  });
}

}  // namespace sepsisflow::cli
