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


// Keeps a target number of replicas healthy and spreads requests over them.

#ifndef SEPSISFLOW_ORCHESTRATOR_ORCHESTRATOR_H_
#define SEPSISFLOW_ORCHESTRATOR_ORCHESTRATOR_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sepsisflow/orchestrator/launcher.h"
#include "sepsisflow/orchestrator/scaling_config.h"
#include "sepsisflow/service/http_server.h"

namespace sepsisflow::orchestrator {

enum class ReplicaStatus { kStarting, kHealthy, kUnhealthy, kRestarting, kDraining };

std::string_view ToString(ReplicaStatus status);

struct ReplicaState {
  std::string replica_id;
  ReplicaStatus status = ReplicaStatus::kStarting;
  // Requests answered by this replica; survives restarts.
  std::uint64_t served_count = 0;
  int outstanding = 0;
  int port = -1;
  long pid = -1;
  int restarts = 0;
  // Wall-clock milliseconds of the last successful probe, 0 if none.
  std::int64_t last_health_at_ms = 0;
};

nlohmann::json ToJson(const ReplicaState& state);

class Orchestrator {
 public:
  Orchestrator(ScalingConfig config, std::unique_ptr<ReplicaLauncher> launcher);
  ~Orchestrator();
  Orchestrator(const Orchestrator&) = delete;
  Orchestrator& operator=(const Orchestrator&) = delete;

  // Starts the control loop, which brings up config.replicas replicas.
  void Start();
  // Stops the control loop and terminates every replica.
  void Stop();

  // New target; n >= 1. Scale-down drains a replica before stopping it.
  void ScaleTo(int n);
  int desired() const { return desired_.load(); }

  // Forwards to a healthy replica. 503 no_healthy_replica when none is
  // available; 502 upstream_unavailable when forwarding fails twice.
  service::HttpReply Dispatch(const service::HttpRequest& request);

  std::vector<ReplicaState> ReplicaStats() const;
  int HealthyCount() const;
  // Waits until exactly `n` replicas are healthy and none are draining.
  bool WaitForHealthy(int n, std::chrono::milliseconds timeout) const;

  // Requests answered by some replica, whatever their status code.
  std::uint64_t served_total() const { return served_total_.load(); }
  std::uint64_t retired_served() const;
  const ScalingConfig& config() const { return config_; }

  // Kills the replica abruptly, as a crash would. Returns false when unknown.
  bool KillReplica(const std::string& replica_id);

 private:
  struct Replica;

  void ControlLoop();
  void Tick();
  void PublishSnapshot();
  std::shared_ptr<Replica> Pick(const std::vector<std::shared_ptr<Replica>>& healthy,
                                const Replica* avoid);
  std::vector<std::shared_ptr<Replica>> HealthySnapshot() const;

  ScalingConfig config_;
  std::unique_ptr<ReplicaLauncher> launcher_;
  std::atomic<int> desired_;

  // Owned by the control loop; readers copy under replicas_mu_.
  mutable std::mutex replicas_mu_;
  std::vector<std::shared_ptr<Replica>> replicas_;
  std::uint64_t retired_served_ = 0;
  int next_replica_index_ = 0;

  mutable std::mutex snapshot_mu_;
  std::vector<std::shared_ptr<Replica>> healthy_;
  mutable std::condition_variable state_cv_;

  std::atomic<std::uint64_t> rr_counter_{0};
  std::atomic<std::uint64_t> served_total_{0};

  std::mutex loop_mu_;
  std::condition_variable loop_cv_;
  bool stopping_ = false;
  std::thread loop_;
};

// Front endpoint handler: the prediction API via Dispatch, plus
// GET /admin/status and POST /admin/scale {"replicas": n}.
service::HttpHandler FrontHandler(Orchestrator& orchestrator);

nlohmann::json StatusJson(const Orchestrator& orchestrator);

}  // namespace sepsisflow::orchestrator

#endif  // SEPSISFLOW_ORCHESTRATOR_ORCHESTRATOR_H_
