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


#include "sepsisflow/orchestrator/orchestrator.h"

#include <algorithm>
#include <future>

#include <spdlog/spdlog.h>

#include "httplib.h"

namespace sepsisflow::orchestrator {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

constexpr std::chrono::milliseconds kMaxTick{50};

std::int64_t WallMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

service::HttpReply Failure(int status, const std::string& code, const std::string& detail) {
  const auto r = service::ApiResponse::Failure(status, code, detail);
  return {r.status, r.body, {}};
}

}  // namespace

std::string_view ToString(ReplicaStatus status) {
  switch (status) {
    case ReplicaStatus::kStarting: return "starting";
    case ReplicaStatus::kHealthy: return "healthy";
    case ReplicaStatus::kUnhealthy: return "unhealthy";
    case ReplicaStatus::kRestarting: return "restarting";
    case ReplicaStatus::kDraining: return "draining";
  }
  return "unknown";
}

json ToJson(const ReplicaState& s) {
  return {{"replica_id", s.replica_id},
          {"status", ToString(s.status)},
          {"served_count", s.served_count},
          {"outstanding", s.outstanding},
          {"port", s.port},
          {"pid", s.pid},
          {"restarts", s.restarts},
          {"last_health_at_ms", s.last_health_at_ms}};
}

struct Orchestrator::Replica {
  std::string id;
  std::atomic<ReplicaStatus> status{ReplicaStatus::kRestarting};
  std::atomic<bool> draining{false};
  std::atomic<std::uint64_t> served{0};
  std::atomic<int> outstanding{0};
  std::atomic<int> port{-1};
  std::atomic<long> pid{-1};
  std::atomic<int> restarts{0};
  std::atomic<std::int64_t> last_health_ms{0};

  // Written by the control loop; KillReplica also takes handle_mu.
  std::mutex handle_mu;
  std::unique_ptr<ReplicaHandle> handle;
  int consecutive_failures = 0;
  int backoff_ms = 0;
  Clock::time_point next_restart_at;
  Clock::time_point launched_at;
  Clock::time_point next_probe_at;
};

Orchestrator::Orchestrator(ScalingConfig config, std::unique_ptr<ReplicaLauncher> launcher)
    : config_(std::move(config)), launcher_(std::move(launcher)), desired_(config_.replicas) {
  config_.Validate();
}

Orchestrator::~Orchestrator() { Stop(); }

void Orchestrator::Start() {
  std::lock_guard lock(loop_mu_);
  if (loop_.joinable()) return;
  stopping_ = false;
  loop_ = std::thread([this] { ControlLoop(); });
}

void Orchestrator::Stop() {
  {
    std::lock_guard lock(loop_mu_);
    stopping_ = true;
  }
  loop_cv_.notify_all();
  if (loop_.joinable()) loop_.join();

  std::vector<std::shared_ptr<Replica>> all;
  {
    std::lock_guard lock(replicas_mu_);
    all.swap(replicas_);
  }
  {
    std::lock_guard lock(snapshot_mu_);
    healthy_.clear();
  }
  for (auto& r : all) {
    if (r->handle) {
      r->handle->Terminate();
      r->handle.reset();
    }
  }
}

void Orchestrator::ScaleTo(int n) {
  if (n < 1) throw Error("invalid_scale", "replica count must be >= 1, got " + std::to_string(n));
  desired_ = n;
  spdlog::info("scale target set to {}", n);
  loop_cv_.notify_all();
}

void Orchestrator::ControlLoop() {
  const auto tick = std::min(kMaxTick, std::chrono::milliseconds(config_.health_interval_ms));
  std::unique_lock lock(loop_mu_);
  while (!stopping_) {
    lock.unlock();
    try {
      Tick();
    } catch (const std::exception& e) {
      spdlog::error("control loop: {}", e.what());
    }
    lock.lock();
    loop_cv_.wait_for(lock, tick, [this] { return stopping_; });
  }
}

void Orchestrator::Tick() {
  const auto now = Clock::now();
  std::vector<std::shared_ptr<Replica>> replicas;
  {
    std::lock_guard lock(replicas_mu_);
    // Reconcile the count against the target.
    int active = 0;
    for (const auto& r : replicas_) active += r->draining ? 0 : 1;
    const int target = desired_.load();
    while (active < target) {
      auto r = std::make_shared<Replica>();
      r->id = "replica-" + std::to_string(next_replica_index_++);
      r->backoff_ms = config_.restart_backoff_ms;
      r->next_restart_at = now;
      replicas_.push_back(r);
      ++active;
    }
    for (auto it = replicas_.rbegin(); it != replicas_.rend() && active > target; ++it) {
      if ((*it)->draining) continue;
      (*it)->draining = true;
      (*it)->status = ReplicaStatus::kDraining;
      spdlog::info("replica {} draining", (*it)->id);
      --active;
    }
    replicas = replicas_;
  }
  PublishSnapshot();

  auto schedule_restart = [&](Replica& r, const char* reason) {
    spdlog::warn("replica {} {}; restarting in {} ms", r.id, reason, r.backoff_ms);
    {
      std::lock_guard handle_lock(r.handle_mu);
      if (r.handle) {
        r.handle->Kill();
        r.handle->Terminate();
        r.handle.reset();
      }
    }
    r.port = -1;
    r.pid = -1;
    r.status = ReplicaStatus::kRestarting;
    r.restarts++;
    r.consecutive_failures = 0;
    r.next_restart_at = Clock::now() + std::chrono::milliseconds(r.backoff_ms);
    r.backoff_ms = std::min(std::max(1, r.backoff_ms * 2), config_.max_backoff_ms);
  };

  std::vector<std::shared_ptr<Replica>> retired;
  std::vector<std::shared_ptr<Replica>> to_probe;
  for (const auto& r : replicas) {
    if (r->draining) {
      // Marked draining before this read; a dispatcher that raced us has
      // already raised `outstanding` or will see the flag and back off.
      if (r->outstanding.load() == 0) {
        std::lock_guard handle_lock(r->handle_mu);
        if (r->handle) r->handle->Terminate();
        r->handle.reset();
        retired.push_back(r);
      }
      continue;
    }
    bool exited;
    {
      std::lock_guard handle_lock(r->handle_mu);
      exited = r->handle && !r->handle->Alive();
    }
    if (exited) {
      schedule_restart(*r, "exited");
      continue;
    }
    if (!r->handle) {
      if (Clock::now() < r->next_restart_at) continue;
      std::unique_ptr<ReplicaHandle> handle;
      try {
        handle = launcher_->Launch(r->id);
      } catch (const Error& e) {
        spdlog::error("{}", e.what());
        schedule_restart(*r, "failed to start");
        continue;
      }
      r->port = handle->port();
      r->pid = handle->pid();
      {
        std::lock_guard handle_lock(r->handle_mu);
        r->handle = std::move(handle);
      }
      r->status = ReplicaStatus::kStarting;
      r->launched_at = Clock::now();
      r->next_probe_at = r->launched_at;
    }
    if (r->status == ReplicaStatus::kStarting || Clock::now() >= r->next_probe_at) {
      to_probe.push_back(r);
    }
  }

  // Probes run in parallel so one slow replica does not stall the others.
  std::vector<std::future<bool>> results;
  for (const auto& r : to_probe) {
    results.push_back(std::async(std::launch::async, [port = r->port.load(), this] {
      httplib::Client client("127.0.0.1", port);
      client.set_connection_timeout(std::chrono::milliseconds(config_.probe_timeout_ms));
      client.set_read_timeout(std::chrono::milliseconds(config_.probe_timeout_ms));
      const auto res = client.Get("/health");
      return res && res->status == 200;
    }));
  }
  for (std::size_t i = 0; i < to_probe.size(); ++i) {
    Replica& r = *to_probe[i];
    const bool ok = results[i].get();
    r.next_probe_at = Clock::now() + std::chrono::milliseconds(config_.health_interval_ms);
    if (ok) {
      if (r.status != ReplicaStatus::kHealthy) spdlog::info("replica {} healthy", r.id);
      r.status = ReplicaStatus::kHealthy;
      r.consecutive_failures = 0;
      r.backoff_ms = config_.restart_backoff_ms;
      r.last_health_ms = WallMillis();
      continue;
    }
    if (r.status == ReplicaStatus::kStarting) {
      if (Clock::now() - r.launched_at > std::chrono::milliseconds(config_.startup_timeout_ms)) {
        schedule_restart(r, "did not become healthy");
      }
      continue;
    }
    r.status = ReplicaStatus::kUnhealthy;
    if (++r.consecutive_failures >= config_.failure_threshold) {
      schedule_restart(r, "failed health probes");
    }
  }

  if (!retired.empty()) {
    std::lock_guard lock(replicas_mu_);
    for (const auto& r : retired) {
      retired_served_ += r->served.load();
      replicas_.erase(std::remove(replicas_.begin(), replicas_.end(), r), replicas_.end());
      spdlog::info("replica {} stopped after draining", r->id);
    }
  }
  PublishSnapshot();
}

void Orchestrator::PublishSnapshot() {
  std::vector<std::shared_ptr<Replica>> healthy;
  {
    std::lock_guard lock(replicas_mu_);
    for (const auto& r : replicas_) {
      if (r->status == ReplicaStatus::kHealthy && !r->draining) healthy.push_back(r);
    }
  }
  {
    std::lock_guard lock(snapshot_mu_);
    healthy_.swap(healthy);
  }
  state_cv_.notify_all();
}

std::vector<std::shared_ptr<Orchestrator::Replica>> Orchestrator::HealthySnapshot() const {
  std::lock_guard lock(snapshot_mu_);
  return healthy_;
}

std::shared_ptr<Orchestrator::Replica> Orchestrator::Pick(
    const std::vector<std::shared_ptr<Replica>>& healthy, const Replica* avoid) {
  const std::size_t n = healthy.size();
  const std::uint64_t start = rr_counter_.fetch_add(1, std::memory_order_relaxed);
  if (config_.dispatch_policy == DispatchPolicy::kRoundRobin) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& r = healthy[(start + k) % n];
      if (r.get() != avoid || n == 1) return r;
    }
    return healthy[start % n];
  }
  std::shared_ptr<Replica> best;
  int best_load = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& r = healthy[(start + k) % n];
    if (r.get() == avoid && n > 1) continue;
    const int load = r->outstanding.load(std::memory_order_relaxed);
    if (!best || load < best_load) {
      best = r;
      best_load = load;
    }
  }
  return best;
}

service::HttpReply Orchestrator::Dispatch(const service::HttpRequest& request) {
  const auto healthy = HealthySnapshot();
  if (healthy.empty()) return Failure(503, "no_healthy_replica", "no replica is ready");

  const Replica* previous = nullptr;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto replica = Pick(healthy, previous);
    previous = replica.get();
    replica->outstanding.fetch_add(1);
    if (replica->draining.load()) {
      replica->outstanding.fetch_sub(1);
      continue;
    }
    // One connection per forwarded request: a replica's worker threads are
    // never pinned by idle upstream connections.
    const int port = replica->port.load();
    httplib::Result res{nullptr, httplib::Error::Connection};
    if (port > 0) {
      httplib::Client client("127.0.0.1", port);
      client.set_tcp_nodelay(true);
      client.set_connection_timeout(std::chrono::milliseconds(std::min(config_.request_timeout_ms, 5000)));
      client.set_read_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
      client.set_write_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
      if (request.method == "GET") {
        res = client.Get(request.path);
      } else if (request.method == "POST") {
        res = client.Post(request.path, request.body, "application/json");
      } else if (request.method == "PUT") {
        res = client.Put(request.path, request.body, "application/json");
      } else if (request.method == "DELETE") {
        res = client.Delete(request.path, request.body, "application/json");
      } else {
        replica->outstanding.fetch_sub(1);
        return Failure(405, "method_not_allowed", request.method);
      }
    }
    replica->outstanding.fetch_sub(1);
    if (res) {
      replica->served.fetch_add(1);
      served_total_.fetch_add(1);
      service::HttpReply reply{res->status, std::move(res->body), {}};
      reply.headers[service::kReplicaHeader] = replica->id;
      return reply;
    }
    spdlog::warn("forward to {} failed: {}", replica->id, httplib::to_string(res.error()));
  }
  return Failure(502, "upstream_unavailable", "forwarding failed on two attempts");
}

std::vector<ReplicaState> Orchestrator::ReplicaStats() const {
  std::vector<std::shared_ptr<Replica>> replicas;
  {
    std::lock_guard lock(replicas_mu_);
    replicas = replicas_;
  }
  std::vector<ReplicaState> out;
  for (const auto& r : replicas) {
    ReplicaState s;
    s.replica_id = r->id;
    s.status = r->draining ? ReplicaStatus::kDraining : r->status.load();
    s.served_count = r->served.load();
    s.outstanding = r->outstanding.load();
    s.port = r->port.load();
    s.pid = r->pid.load();
    s.restarts = r->restarts.load();
    s.last_health_at_ms = r->last_health_ms.load();
    out.push_back(std::move(s));
  }
  return out;
}

int Orchestrator::HealthyCount() const { return static_cast<int>(HealthySnapshot().size()); }

std::uint64_t Orchestrator::retired_served() const {
  std::lock_guard lock(replicas_mu_);
  return retired_served_;
}

bool Orchestrator::WaitForHealthy(int n, std::chrono::milliseconds timeout) const {
  const auto deadline = Clock::now() + timeout;
  auto converged = [&] {
    const auto stats = ReplicaStats();
    int healthy = 0;
    for (const auto& s : stats) {
      if (s.status == ReplicaStatus::kDraining) return false;
      healthy += s.status == ReplicaStatus::kHealthy ? 1 : 0;
    }
    return healthy == n && static_cast<int>(stats.size()) == n;
  };
  std::unique_lock lock(snapshot_mu_);
  while (true) {
    lock.unlock();
    if (converged()) return true;
    lock.lock();
    if (state_cv_.wait_until(lock, std::min(deadline, Clock::now() + kMaxTick)) ==
            std::cv_status::timeout &&
        Clock::now() >= deadline) {
      lock.unlock();
      return converged();
    }
  }
}

bool Orchestrator::KillReplica(const std::string& replica_id) {
  std::lock_guard lock(replicas_mu_);
  for (const auto& r : replicas_) {
    if (r->id != replica_id) continue;
    std::lock_guard handle_lock(r->handle_mu);
    if (!r->handle) return false;
    r->handle->Kill();
    return true;
  }
  return false;
}

json StatusJson(const Orchestrator& orchestrator) {
  json replicas = json::array();
  int healthy = 0;
  std::uint64_t served = 0;
  for (const auto& s : orchestrator.ReplicaStats()) {
    healthy += s.status == ReplicaStatus::kHealthy ? 1 : 0;
    served += s.served_count;
    replicas.push_back(ToJson(s));
  }
  const auto& config = orchestrator.config();
  return {{"desired", orchestrator.desired()},
          {"healthy", healthy},
          {"detected_threads", config.detected_threads},
          {"recommended_replicas", config.detected_threads},
          {"dispatch_policy", ToString(config.dispatch_policy)},
          {"served_total", orchestrator.served_total()},
          {"retired_served", orchestrator.retired_served()},
          {"replica_served_sum", served},
          {"replicas", std::move(replicas)}};
}

service::HttpHandler FrontHandler(Orchestrator& orchestrator) {
  return [&orchestrator](const service::HttpRequest& req) -> service::HttpReply {
    if (req.path == "/admin/status") {
      if (req.method != "GET") return Failure(405, "method_not_allowed", req.method);
      return {200, StatusJson(orchestrator).dump(), {}};
    }
    if (req.path == "/admin/scale") {
      if (req.method != "POST") return Failure(405, "method_not_allowed", req.method);
      try {
        const json body = json::parse(req.body);
        const auto n = body.at("replicas");
        if (!n.is_number_integer() || n.get<int>() < 1) {
          return Failure(400, "bad_request", "'replicas' must be an integer >= 1");
        }
        orchestrator.ScaleTo(n.get<int>());
        return {202, json{{"desired", n.get<int>()}}.dump(), {}};
      } catch (const json::exception& e) {
        return Failure(400, "bad_request", e.what());
      }
    }
    if (req.path.rfind("/admin/", 0) == 0) return Failure(404, "route_not_found", req.path);
    return orchestrator.Dispatch(req);
  };
}

}  // namespace sepsisflow::orchestrator
