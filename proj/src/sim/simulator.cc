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


#include "sepsisflow/sim/simulator.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace sepsisflow::sim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class EventType { kSend, kArrival, kTimeout };

struct Event {
  double time;
  std::uint64_t seq;
  EventType type;
  std::int64_t arg;
};

struct LaterEvent {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.seq) > std::tie(b.time, b.seq);
  }
};

struct Request {
  double issued_at = 0.0;
  double work_ms = 0.0;
  double started_at = 0.0;
  int vu = -1;
  bool done = false;
};

struct Replica {
  std::deque<std::int64_t> waiting;
  std::int64_t in_service = -1;
  double finish_tag = 0.0;
  std::uint64_t finish_seq = 0;
};

class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg)
      : cfg_(cfg),
        rng_(cfg.seed),
        end_ms_(cfg.sim_duration_s * 1000.0),
        warmup_ms_(cfg.warmup_s * 1000.0),
        replicas_(cfg.replicas),
        least_outstanding_(cfg.dispatch == "least_outstanding") {
    if (cfg.service_cv > 0.0) {
      const double shape = 1.0 / (cfg.service_cv * cfg.service_cv);
      service_ = std::gamma_distribution<double>(shape, cfg.service_time_base_ms / shape);
    }
    if (cfg.replicas > cfg.threads) {
      oversub_slowdown_ =
          (1.0 + cfg.oversub_penalty * (cfg.replicas - cfg.threads) / cfg.threads) *
          (1.0 + cfg.context_switch_ms / cfg.quantum_ms);
    }
  }

  SimReport Run() {
    if (cfg_.arrival_rate_rps > 0.0) {
      Schedule(NextInterarrival(), EventType::kArrival, -1);
    } else {
      for (int vu = 0; vu < cfg_.vus; ++vu) Schedule(0.0, EventType::kSend, vu);
    }
    for (;;) {
      const double t_event = events_.empty() ? kInf : events_.top().time;
      const double t_done = NextCompletion();
      const double t_next = std::min(t_event, t_done);
      if (t_next > end_ms_) {
        Advance(end_ms_);
        break;
      }
      // Completions win ties, so an answer arriving exactly at the timeout
      // still counts.
      if (t_done <= t_event) {
        Advance(t_done);
        Complete();
      } else {
        const Event ev = events_.top();
        events_.pop();
        Advance(ev.time);
        Handle(ev);
      }
    }
    return Finish();
  }

 private:
  void Schedule(double time, EventType type, std::int64_t arg) {
    events_.push({time, seq_++, type, arg});
  }

  double NextInterarrival() {
    return now_ + std::exponential_distribution<double>(cfg_.arrival_rate_rps / 1000.0)(rng_);
  }

  double DrawWork() { return service_ ? (*service_)(rng_) : cfg_.service_time_base_ms; }

  // Progress per millisecond of each busy replica.
  double Rate() const {
    const int busy = static_cast<int>(in_service_.size());
    if (busy <= cfg_.threads) return 1.0;
    return static_cast<double>(cfg_.threads) / busy / oversub_slowdown_;
  }

  double NextCompletion() const {
    if (in_service_.empty()) return kInf;
    const double tag = std::get<0>(*in_service_.begin());
    return now_ + std::max(0.0, tag - work_clock_) / Rate();
  }

  void Advance(double to) {
    const double dt = to - now_;
    if (dt <= 0.0) return;
    const auto busy = static_cast<double>(in_service_.size());
    area_in_system_ += static_cast<double>(jobs_in_system_) * dt;
    area_waiting_ += static_cast<double>(waiting_) * dt;
    area_busy_ += busy * dt;
    area_cpu_ += std::min(busy, static_cast<double>(cfg_.threads)) * dt;
    if (busy > 0) work_clock_ += Rate() * dt;
    now_ = to;
  }

  void StartService(int r, std::int64_t id) {
    Replica& rep = replicas_[r];
    rep.in_service = id;
    rep.finish_tag = work_clock_ + requests_[id].work_ms;
    rep.finish_seq = seq_++;
    requests_[id].started_at = now_;
    in_service_.insert({rep.finish_tag, rep.finish_seq, r});
  }

  int PickReplica() {
    const auto n = static_cast<std::uint64_t>(cfg_.replicas);
    const int start = static_cast<int>(next_replica_++ % n);
    if (!least_outstanding_) return start;
    // Fewest queued plus running; ties go round-robin from `start`.
    int best = start;
    std::size_t best_load = std::numeric_limits<std::size_t>::max();
    for (int k = 0; k < cfg_.replicas; ++k) {
      const int r = (start + k) % cfg_.replicas;
      const std::size_t load =
          replicas_[r].waiting.size() + (replicas_[r].in_service >= 0 ? 1 : 0);
      if (load < best_load) {
        best = r;
        best_load = load;
      }
    }
    return best;
  }

  void Send(int vu) {
    const auto id = static_cast<std::int64_t>(requests_.size());
    requests_.push_back({now_, DrawWork(), 0.0, vu, false});
    ++arrivals_;
    ++jobs_in_system_;
    const int r = PickReplica();
    Replica& rep = replicas_[r];
    if (rep.in_service < 0) {
      StartService(r, id);
    } else {
      rep.waiting.push_back(id);
      ++waiting_;
      max_queue_ = std::max(max_queue_, waiting_);
    }
    Schedule(now_ + cfg_.timeout_ms, EventType::kTimeout, id);
  }

  void Record(double latency, bool ok, int replica) {
    if (now_ < warmup_ms_) return;
    latencies_.push_back(latency);
    if (!ok) {
      ++window_failures_;
      return;
    }
    ++per_replica_[replica];
    if (latency > thresholds_.p95_ms) ++late_;
  }

  void NextFromVu(int vu) {
    if (vu >= 0) Schedule(now_ + cfg_.think_time_ms, EventType::kSend, vu);
  }

  void Complete() {
    const auto [tag, seq, r] = *in_service_.begin();
    in_service_.erase(in_service_.begin());
    work_clock_ = std::max(work_clock_, tag);
    Replica& rep = replicas_[r];
    const std::int64_t id = rep.in_service;
    rep.in_service = -1;
    Request& req = requests_[id];
    --jobs_in_system_;
    ++server_completions_;
    server_sojourn_sum_ += now_ - req.issued_at;
    service_wall_sum_ += now_ - req.started_at;

    if (!req.done) {
      req.done = true;
      ++completions_;
      Record(now_ - req.issued_at, true, r);
      NextFromVu(req.vu);
    }
    if (!rep.waiting.empty()) {
      const std::int64_t next = rep.waiting.front();
      rep.waiting.pop_front();
      --waiting_;
      StartService(r, next);
    }
  }

  void Handle(const Event& ev) {
    switch (ev.type) {
      case EventType::kSend:
        Send(static_cast<int>(ev.arg));
        break;
      case EventType::kArrival:
        Send(-1);
        Schedule(NextInterarrival(), EventType::kArrival, -1);
        break;
      case EventType::kTimeout: {
        Request& req = requests_[ev.arg];
        if (req.done) break;
        // The client gives up; the replica still does the work.
        req.done = true;
        ++failures_;
        Record(cfg_.timeout_ms, false, -1);
        NextFromVu(req.vu);
        break;
      }
    }
  }

  SimReport Finish() {
    SimReport out;
    out.config = cfg_;
    out.arrivals = arrivals_;
    out.completions = completions_;
    out.failures = failures_;
    for (const Request& req : requests_) out.in_flight_at_end += req.done ? 0 : 1;
    const double span = end_ms_;
    out.mean_queue_length = area_waiting_ / span;
    out.max_queue_length = max_queue_;
    out.mean_jobs_in_system = area_in_system_ / span;
    out.server_throughput_rps = static_cast<double>(server_completions_) / (span / 1000.0);
    if (server_completions_ > 0) {
      out.mean_server_sojourn_ms = server_sojourn_sum_ / static_cast<double>(server_completions_);
      out.effective_service_time_ms =
          service_wall_sum_ / static_cast<double>(server_completions_);
    }
    out.utilization = area_busy_ / (span * cfg_.replicas);
    out.cpu_utilization = area_cpu_ / (span * cfg_.threads);

    loadgen::LoadTestReport& m = out.metrics;
    m.vus = cfg_.arrival_rate_rps > 0.0 ? 0 : cfg_.vus;
    m.replicas = cfg_.replicas;
    m.duration_s = cfg_.sim_duration_s - cfg_.warmup_s;
    m.thresholds = thresholds_;
    loadgen::Summarize(latencies_, window_failures_, m);
    m.timeouts = window_failures_;
    m.late_successes = late_;
    for (const auto& [r, n] : per_replica_) m.per_replica[fmt::format("replica-{}", r)] = n;
    m.iterations = {m.total_requests, m.avg_ms, m.max_ms};
    return out;
  }

  const SimConfig cfg_;
  std::mt19937_64 rng_;
  std::optional<std::gamma_distribution<double>> service_;
  double oversub_slowdown_ = 1.0;
  const double end_ms_;
  const double warmup_ms_;
  loadgen::Thresholds thresholds_;

  double now_ = 0.0;
  // Work done by any one busy replica since the start; finish tags are on
  // this clock, so a rate change never rewrites them.
  double work_clock_ = 0.0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, LaterEvent> events_;
  std::set<std::tuple<double, std::uint64_t, int>> in_service_;
  std::vector<Replica> replicas_;
  std::vector<Request> requests_;
  std::uint64_t next_replica_ = 0;
  const bool least_outstanding_;

  std::uint64_t arrivals_ = 0;
  std::uint64_t completions_ = 0;
  std::uint64_t failures_ = 0;
  std::uint64_t jobs_in_system_ = 0;
  std::uint64_t waiting_ = 0;
  std::uint64_t max_queue_ = 0;
  std::uint64_t server_completions_ = 0;
  double server_sojourn_sum_ = 0.0;
  double service_wall_sum_ = 0.0;
  double area_in_system_ = 0.0;
  double area_waiting_ = 0.0;
  double area_busy_ = 0.0;
  double area_cpu_ = 0.0;

  std::vector<double> latencies_;
  std::uint64_t window_failures_ = 0;
  std::uint64_t late_ = 0;
  std::map<int, std::uint64_t> per_replica_;
};

}  // namespace

void SimConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidConfig(what);
  };
  require(replicas >= 1, "replicas must be >= 1");
  require(threads >= 1, "threads must be >= 1");
  require(arrival_rate_rps >= 0.0, "arrival_rate_rps must be >= 0");
  require(arrival_rate_rps > 0.0 || vus >= 1, "vus must be >= 1 in closed loop");
  require(think_time_ms >= 0.0, "think_time_ms must be >= 0");
  require(service_time_base_ms > 0.0, "service_time_base_ms must be positive");
  require(service_cv >= 0.0, "service_cv must be >= 0");
  require(oversub_penalty >= 0.0, "oversub_penalty must be >= 0");
  require(context_switch_ms >= 0.0, "context_switch_ms must be >= 0");
  require(quantum_ms > 0.0, "quantum_ms must be positive");
  require(sim_duration_s > 0.0, "sim_duration_s must be positive");
  require(warmup_s >= 0.0 && warmup_s < sim_duration_s,
          "warmup_s must lie in [0, sim_duration_s)");
  require(timeout_ms > 0.0, "timeout_ms must be positive");
  require(dispatch == "round_robin" || dispatch == "least_outstanding",
          "dispatch must be round_robin or least_outstanding");
}

void SimConfig::Merge(const nlohmann::json& j) {
  try {
    auto take = [&j](const char* key, auto& field) {
      if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
    };
    take("replicas", replicas);
    take("threads", threads);
    take("vus", vus);
    take("think_time_ms", think_time_ms);
    take("arrival_rate_rps", arrival_rate_rps);
    take("dispatch", dispatch);
    take("service_time_base_ms", service_time_base_ms);
    take("service_cv", service_cv);
    take("oversub_penalty", oversub_penalty);
    take("context_switch_ms", context_switch_ms);
    take("quantum_ms", quantum_ms);
    take("sim_duration_s", sim_duration_s);
    take("warmup_s", warmup_s);
    take("seed", seed);
    take("timeout_ms", timeout_ms);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(e.what());
  }
}

nlohmann::json ToJson(const SimConfig& c) {
  return {{"replicas", c.replicas},
          {"threads", c.threads},
          {"vus", c.vus},
          {"think_time_ms", c.think_time_ms},
          {"arrival_rate_rps", c.arrival_rate_rps},
          {"dispatch", c.dispatch},
          {"service_time_base_ms", c.service_time_base_ms},
          {"service_cv", c.service_cv},
          {"oversub_penalty", c.oversub_penalty},
          {"context_switch_ms", c.context_switch_ms},
          {"quantum_ms", c.quantum_ms},
          {"sim_duration_s", c.sim_duration_s},
          {"warmup_s", c.warmup_s},
          {"seed", c.seed},
          {"timeout_ms", c.timeout_ms}};
}

nlohmann::json ToJson(const SimReport& r) {
  nlohmann::json j = loadgen::ToJson(r.metrics);
  j["config"] = ToJson(r.config);
  j["arrivals"] = r.arrivals;
  j["completions"] = r.completions;
  j["failures_total"] = r.failures;
  j["in_flight_at_end"] = r.in_flight_at_end;
  j["effective_service_time_ms"] = r.effective_service_time_ms;
  j["queue"] = {{"mean_length", r.mean_queue_length},
                {"max_length", r.max_queue_length},
                {"mean_jobs_in_system", r.mean_jobs_in_system}};
  j["server_throughput_rps"] = r.server_throughput_rps;
  j["mean_server_sojourn_ms"] = r.mean_server_sojourn_ms;
  j["utilization"] = r.utilization;
  j["cpu_utilization"] = r.cpu_utilization;
  return j;
}

SimReport Simulate(const SimConfig& config) {
  config.Validate();
  return Simulation(config).Run();
}

std::vector<SimReport> SweepReplicas(const SimConfig& config,
                                     const std::vector<int>& replica_counts) {
  if (replica_counts.empty()) throw InvalidConfig("empty replica list");
  std::vector<SimReport> out;
  out.reserve(replica_counts.size());
  for (int r : replica_counts) {
    SimConfig point = config;
    point.replicas = r;
    out.push_back(Simulate(point));
  }
  return out;
}

std::string RenderSweepTable(const std::vector<SimReport>& reports) {
  if (reports.empty()) throw loadgen::EmptyReport();
  std::vector<loadgen::ComparisonRow> rows;
  for (const SimReport& r : reports) {
    rows.push_back({std::to_string(r.config.replicas), r.metrics});
  }
  return loadgen::RenderComparisonTable(rows, reports.front().metrics.p95_ms,
                                        fmt::format("{} rep.", reports.front().config.replicas));
}

}  // namespace sepsisflow::sim
