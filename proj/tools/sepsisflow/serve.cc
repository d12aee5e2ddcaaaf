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


// worker, serve, scale and status.

#include <unistd.h>

#include <cstdio>
#include <iostream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "common.h"
#include "sepsisflow/gbdt/model.h"
#include "sepsisflow/orchestrator/launcher.h"
#include "sepsisflow/orchestrator/orchestrator.h"
#include "sepsisflow/service/http_server.h"
#include "sepsisflow/service/prediction_service.h"
#include "sepsisflow/store/document_store.h"

namespace sepsisflow::cli {
namespace {

namespace fs = std::filesystem;

struct WorkerOptions {
  ServiceFlags service;
  std::optional<std::string> replica_id;
  std::optional<std::string> host;
  std::optional<int> port;
};

int RunWorker(const GlobalOptions& global, const WorkerOptions& opts) {
  TerminationSignals signals;
  service::ServiceConfig cfg = ResolveServiceConfig(global, opts.service);
  if (opts.replica_id) cfg.replica_id = *opts.replica_id;
  if (opts.host) cfg.host = *opts.host;
  if (opts.port) cfg.port = *opts.port;
  cfg.Validate();

  auto store = std::make_shared<const store::FileDocumentStore>(cfg.store_root);
  service::PredictionService svc(cfg, store);
  service::HttpServer server(service::ServiceHandler(svc), cfg.threads, cfg.replica_id);
  const int port = server.Bind(cfg.host, cfg.port);
  std::printf("%s%d\n", orchestrator::kListeningPrefix, port);
  std::fflush(stdout);
  server.Start();

  // Health answers 503 until the model is in place.
  try {
    svc.SetModel(std::make_shared<const gbdt::TreeEnsembleModel>(
        gbdt::LoadModel(cfg.model_path)));
  } catch (const Error& e) {
    spdlog::error("replica {} cannot load model {}: {}", cfg.replica_id,
                  cfg.model_path.string(), e.what());
    server.Stop();
    return kExitFailure;
  }
  spdlog::info("replica {} ready on port {}", cfg.replica_id, port);
  const int sig = signals.Wait();
  spdlog::info("replica {} stopping on signal {}", cfg.replica_id, sig);
  server.Stop();
  return kExitOk;
}

struct ServeOptions {
  ServiceFlags service;
  std::optional<std::string> replicas;
  std::optional<std::string> host;
  std::optional<int> port;
  std::optional<int> detected_threads;
  std::optional<std::string> policy;
  std::optional<int> health_interval_ms;
  std::optional<int> restart_backoff_ms;
  std::optional<int> front_threads;
};

int RunServe(const GlobalOptions& global, const ServeOptions& opts) {
  TerminationSignals signals;
  const service::ServiceConfig svc = ResolveServiceConfig(global, opts.service);

  const nlohmann::json section = ConfigSection(global, "scaling");
  orchestrator::ScalingConfig sc;
  sc.Merge(section);
  sc.MergeEnvironment(service::ProcessEnv);
  std::optional<int> thread_override = opts.detected_threads;
  if (!thread_override &&
      (section.contains("detected_threads") ||
       service::ProcessEnv(std::string(service::kEnvPrefix) + "DETECTED_THREADS"))) {
    thread_override = sc.detected_threads;
  }
  sc.detected_threads = orchestrator::DetectThreads(thread_override);
  if (opts.replicas) {
    if (*opts.replicas == "auto") {
      sc.replicas = sc.detected_threads;
    } else {
      try {
        std::size_t used = 0;
        sc.replicas = std::stoi(*opts.replicas, &used);
        if (used != opts.replicas->size()) throw std::invalid_argument("replicas");
      } catch (const std::exception&) {
        throw UsageError("--replicas takes an integer or 'auto'");
      }
    }
  }
  if (opts.host) sc.front_host = *opts.host;
  if (opts.port) sc.front_port = *opts.port;
  if (opts.policy) sc.dispatch_policy = orchestrator::DispatchPolicyFromString(*opts.policy);
  if (opts.health_interval_ms) sc.health_interval_ms = *opts.health_interval_ms;
  if (opts.restart_backoff_ms) sc.restart_backoff_ms = *opts.restart_backoff_ms;
  if (opts.front_threads) sc.front_threads = *opts.front_threads;
  sc.Validate();

  std::vector<std::string> worker_args = {
      "--store",         svc.store_root.string(),
      "--model",         svc.model_path.string(),
      "--alert-threshold", fmt::format("{}", svc.alert_threshold),
      "--worker-threads", std::to_string(svc.threads),
      "--log-level",     global.log_level};
  auto launcher = std::make_unique<orchestrator::ProcessLauncher>(
      fs::read_symlink("/proc/self/exe"), worker_args,
      std::chrono::milliseconds(sc.startup_timeout_ms));
  orchestrator::Orchestrator orch(sc, std::move(launcher));
  orch.Start();
  service::HttpServer front(orchestrator::FrontHandler(orch), sc.front_threads, "front");
  const int port = front.Bind(sc.front_host, sc.front_port);
  front.Start();
  // The port is announced once the initial replicas answer, so clients
  // started right after it never see the start-up 503s.
  if (!orch.WaitForHealthy(sc.replicas, std::chrono::milliseconds(sc.startup_timeout_ms))) {
    spdlog::warn("only some of {} replicas healthy after {} ms; serving anyway", sc.replicas,
                 sc.startup_timeout_ms);
  }

  if (global.json) {
    std::cout << nlohmann::json{{"detected_threads", sc.detected_threads},
                                {"recommended_replicas", sc.detected_threads},
                                {"replicas", sc.replicas},
                                {"dispatch_policy", orchestrator::ToString(sc.dispatch_policy)},
                                {"port", port}}
                     .dump()
              << "\n";
  } else {
    std::cout << fmt::format("detected threads: {}\n", sc.detected_threads)
              << fmt::format("recommended replicas: {}\n", sc.detected_threads)
              << fmt::format("replicas: {}\n", sc.replicas);
  }
  std::cout << orchestrator::kListeningPrefix << port << std::endl;

  const int sig = signals.Wait();
  spdlog::info("serve stopping on signal {}", sig);
  front.Stop();
  orch.Stop();
  return kExitOk;
}

struct ControlOptions {
  std::string url = "http://127.0.0.1:8000";
  int replicas = 0;
};

void AddUrl(CLI::App& sub, ControlOptions& opts) {
  sub.add_option("--url", opts.url, "Front endpoint base URL")
      ->envname(std::string(service::kEnvPrefix) + "FRONT_URL")
      ->capture_default_str();
}

int RunScale(const GlobalOptions& global, const ControlOptions& opts) {
  if (opts.replicas < 1) throw UsageError("replica count must be >= 1");
  const auto resp = ControlRequest(opts.url, "POST", "/admin/scale",
                                   nlohmann::json{{"replicas", opts.replicas}}.dump());
  RequireSuccess(resp);
  if (global.json) {
    std::cout << resp.body << "\n";
  } else {
    std::cout << fmt::format("scaling to {} replicas\n", opts.replicas);
  }
  return kExitOk;
}

int RunStatus(const GlobalOptions& global, const ControlOptions& opts) {
  const auto resp = ControlRequest(opts.url, "GET", "/admin/status");
  RequireSuccess(resp);
  if (global.json) {
    std::cout << resp.body << "\n";
    return kExitOk;
  }
  const auto j = nlohmann::json::parse(resp.body);
  std::cout << fmt::format("desired={} healthy={} detected_threads={} policy={} served={}\n",
                           j.at("desired").get<int>(), j.at("healthy").get<int>(),
                           j.at("detected_threads").get<int>(),
                           j.at("dispatch_policy").get<std::string>(),
                           j.at("served_total").get<std::uint64_t>());
  std::cout << "replica | status | served | outstanding | restarts | port\n";
  for (const auto& r : j.at("replicas")) {
    std::cout << fmt::format("{} | {} | {} | {} | {} | {}\n",
                             r.at("replica_id").get<std::string>(),
                             r.at("status").get<std::string>(),
                             r.at("served_count").get<std::uint64_t>(),
                             r.at("outstanding").get<int>(), r.at("restarts").get<int>(),
                             r.at("port").get<int>());
  }
  return kExitOk;
}

}  // namespace

void RegisterWorker(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<WorkerOptions>();
  CLI::App* sub = app.add_subcommand("worker", "Run one prediction replica");
  opts->service.Add(*sub);
  sub->add_option("--replica-id", opts->replica_id, "Replica id reported in X-Replica-Id");
  sub->add_option("--host", opts->host, "Bind address");
  sub->add_option("--port", opts->port, "Bind port; 0 picks a free one");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunWorker(global, *opts); };
  });
}

void RegisterServe(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<ServeOptions>();
  CLI::App* sub =
      app.add_subcommand("serve", "Run replicas behind a load-balancing front endpoint");
  opts->service.Add(*sub);
  sub->add_option("--replicas", opts->replicas, "Replica count, or 'auto' for one per thread");
  sub->add_option("--host", opts->host, "Front endpoint bind address");
  sub->add_option("--port", opts->port, "Front endpoint port; 0 picks a free one");
  sub->add_option("--detected-threads", opts->detected_threads,
                  "Override hardware thread detection");
  sub->add_option("--policy", opts->policy, "round_robin or least_outstanding");
  sub->add_option("--health-interval-ms", opts->health_interval_ms, "Health probe period");
  sub->add_option("--restart-backoff-ms", opts->restart_backoff_ms, "First restart delay");
  sub->add_option("--front-threads", opts->front_threads,
                  "Front endpoint worker threads; 0 is one per connection");
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunServe(global, *opts); };
  });
}

void RegisterScale(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<ControlOptions>();
  CLI::App* sub = app.add_subcommand("scale", "Change the replica count of a running serve");
  sub->add_option("replicas", opts->replicas, "Target replica count")->required();
  AddUrl(*sub, *opts);
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunScale(global, *opts); };
  });
}

void RegisterStatus(CLI::App& app, const GlobalOptions& global, Action& action) {
  auto opts = std::make_shared<ControlOptions>();
  CLI::App* sub = app.add_subcommand("status", "Show replicas of a running serve");
  AddUrl(*sub, *opts);
  sub->callback([&global, &action, opts] {
    action = [&global, opts] { return RunStatus(global, *opts); };
  });
}

}  // namespace sepsisflow::cli
