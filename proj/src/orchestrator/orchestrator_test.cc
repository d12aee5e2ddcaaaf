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

#include <gtest/gtest.h>

#include <atomic>
#include <future>
#include <map>
#include <random>

#include "fixture_store.h"
#include "json.hpp"

namespace sepsisflow::orchestrator {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;

// Replicas answering every path with 200 after an optional delay on /slow.
class EchoLauncher final : public ReplicaLauncher {
 public:
  std::unique_ptr<ReplicaHandle> Launch(const std::string& replica_id) override {
    launches++;
    return std::make_unique<Handle>(replica_id);
  }
  std::atomic<int> launches{0};

 private:
  class Handle final : public ReplicaHandle {
   public:
    explicit Handle(const std::string& id)
        : server_(
              [id](const service::HttpRequest& req) {
                if (req.path == "/slow") std::this_thread::sleep_for(300ms);
                return service::HttpReply{200, json{{"replica", id}}.dump(), {}};
              },
              8, id) {
      port_ = server_.Bind("127.0.0.1", 0);
      server_.Start();
    }
    int port() const override { return port_; }
    bool Alive() override { return !dead_; }
    void Terminate() override {
      server_.Stop();
      dead_ = true;
    }
    void Kill() override { Terminate(); }

   private:
    service::HttpServer server_;
    int port_;
    std::atomic<bool> dead_{false};
  };
};

ScalingConfig FastConfig(int replicas) {
  ScalingConfig config;
  config.replicas = replicas;
  config.health_interval_ms = 100;
  config.restart_backoff_ms = 50;
  config.probe_timeout_ms = 500;
  return config;
}

std::map<std::string, std::uint64_t> Counts(const Orchestrator& o) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& s : o.ReplicaStats()) out[s.replica_id] = s.served_count;
  return out;
}

service::HttpReply Get(Orchestrator& o, const std::string& path) {
  return o.Dispatch({"GET", path, ""});
}

TEST(OrchestratorTest, NoHealthyReplicaIs503) {
  Orchestrator o(FastConfig(1), std::make_unique<EchoLauncher>());
  const auto reply = Get(o, "/anything");
  EXPECT_EQ(reply.status, 503);
  EXPECT_EQ(json::parse(reply.body)["code"], "no_healthy_replica");
}

TEST(OrchestratorTest, ConvergesAndRoundRobins) {
  Orchestrator o(FastConfig(3), std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  for (const auto& [id, served] : Counts(o)) EXPECT_EQ(served, 0u) << id;

  for (int i = 0; i < 6; ++i) {
    const auto reply = Get(o, "/x");
    ASSERT_EQ(reply.status, 200);
    EXPECT_EQ(json::parse(reply.body)["replica"], reply.headers.at(service::kReplicaHeader));
  }
  for (const auto& [id, served] : Counts(o)) EXPECT_EQ(served, 2u) << id;
  o.Stop();
}

TEST(OrchestratorTest, RoundRobinFairnessProperty) {
  Orchestrator o(FastConfig(3), std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto before = Counts(o);
    const int n = std::uniform_int_distribution<int>(1, 40)(rng);
    for (int i = 0; i < n; ++i) ASSERT_EQ(Get(o, "/x").status, 200);
    std::uint64_t lo = ~0ULL, hi = 0, sum = 0;
    for (const auto& [id, served] : Counts(o)) {
      const auto delta = served - before.at(id);
      lo = std::min(lo, delta);
      hi = std::max(hi, delta);
      sum += delta;
    }
    EXPECT_EQ(sum, static_cast<std::uint64_t>(n));
    EXPECT_LE(hi - lo, 1u) << "n=" << n;
  }
  o.Stop();
}

TEST(OrchestratorTest, ConservationUnderConcurrency) {
  Orchestrator o(FastConfig(3), std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  std::atomic<int> ok{0};
  std::vector<std::thread> clients;
  for (int t = 0; t < 6; ++t) {
    clients.emplace_back([&] {
      for (int i = 0; i < 100; ++i) ok += Get(o, "/x").status == 200 ? 1 : 0;
    });
  }
  for (auto& t : clients) t.join();
  std::uint64_t sum = 0;
  for (const auto& [id, served] : Counts(o)) sum += served;
  EXPECT_EQ(ok, 600);
  EXPECT_EQ(sum, 600u);
  EXPECT_EQ(o.served_total(), 600u);
  o.Stop();
}

TEST(OrchestratorTest, RestoresKilledReplica) {
  ScalingConfig config = FastConfig(3);
  Orchestrator o(config, std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  const auto start = std::chrono::steady_clock::now();
  ASSERT_TRUE(o.KillReplica("replica-1"));
  // Requests keep succeeding through the failure.
  for (int i = 0; i < 30; ++i) EXPECT_EQ(Get(o, "/x").status, 200);
  const auto bound = 2 * std::chrono::milliseconds(config.health_interval_ms + config.restart_backoff_ms);
  auto restored = [&] {
    int healthy = 0;
    bool restarted = false;
    for (const auto& s : o.ReplicaStats()) {
      healthy += s.status == ReplicaStatus::kHealthy ? 1 : 0;
      restarted |= s.replica_id == "replica-1" && s.restarts == 1;
    }
    return restarted && healthy == 3;
  };
  while (!restored() && std::chrono::steady_clock::now() - start < 10s) {
    std::this_thread::sleep_for(5ms);
  }
  ASSERT_TRUE(restored());
  EXPECT_LE(std::chrono::steady_clock::now() - start, bound);
  o.Stop();
}

TEST(OrchestratorTest, ScaleDownDrainsInFlightRequests) {
  Orchestrator o(FastConfig(4), std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(4, 10s));
  std::vector<std::future<int>> inflight;
  for (int i = 0; i < 8; ++i) {
    inflight.push_back(std::async(std::launch::async, [&] { return Get(o, "/slow").status; }));
  }
  std::this_thread::sleep_for(50ms);
  o.ScaleTo(1);
  for (auto& f : inflight) EXPECT_EQ(f.get(), 200);
  ASSERT_TRUE(o.WaitForHealthy(1, 10s));
  EXPECT_EQ(o.ReplicaStats().size(), 1u);
  std::uint64_t remaining = 0;
  for (const auto& [id, served] : Counts(o)) remaining += served;
  EXPECT_EQ(remaining + o.retired_served(), o.served_total());

  o.ScaleTo(3);
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  EXPECT_THROW(o.ScaleTo(0), Error);
  o.Stop();
}

TEST(OrchestratorTest, LeastOutstandingServesEverything) {
  ScalingConfig config = FastConfig(3);
  config.dispatch_policy = DispatchPolicy::kLeastOutstanding;
  Orchestrator o(config, std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  std::vector<std::future<int>> slow;
  for (int i = 0; i < 6; ++i) {
    slow.push_back(std::async(std::launch::async, [&] { return Get(o, "/slow").status; }));
  }
  for (auto& f : slow) EXPECT_EQ(f.get(), 200);
  // Six concurrent slow requests over three replicas spread evenly.
  for (const auto& [id, served] : Counts(o)) EXPECT_EQ(served, 2u) << id;
  o.Stop();
}

TEST(FrontHandlerTest, AdminRoutes) {
  Orchestrator o(FastConfig(2), std::make_unique<EchoLauncher>());
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(2, 10s));
  auto front = FrontHandler(o);
  auto status = front({"GET", "/admin/status", ""});
  ASSERT_EQ(status.status, 200);
  const json j = json::parse(status.body);
  EXPECT_EQ(j["desired"], 2);
  EXPECT_EQ(j["healthy"], 2);
  EXPECT_EQ(j["replicas"].size(), 2u);

  EXPECT_EQ(front({"POST", "/admin/scale", R"({"replicas": 0})"}).status, 400);
  EXPECT_EQ(front({"POST", "/admin/scale", "garbage"}).status, 400);
  EXPECT_EQ(front({"POST", "/admin/scale", R"({"replicas": 3})"}).status, 202);
  ASSERT_TRUE(o.WaitForHealthy(3, 10s));
  EXPECT_EQ(front({"GET", "/admin/nothing", ""}).status, 404);
  EXPECT_EQ(front({"GET", "/health", ""}).status, 200);
  o.Stop();
}

TEST(OrchestratorTest, InProcessPredictionReplicas) {
  ::sepsisflow::testing::TempDir dir;
  auto store = std::make_shared<store::FileDocumentStore>(dir.path());
  const auto ids = ::sepsisflow::testing::IngestFixturePatients(*store);
  auto model = std::make_shared<gbdt::TreeEnsembleModel>(
      gbdt::LoadModel(::sepsisflow::testing::FixturePath("model/reference_model.json")));
  auto launcher = std::make_unique<InProcessLauncher>([&](const std::string& id) {
    service::ServiceConfig config;
    config.replica_id = id;
    auto s = std::make_unique<service::PredictionService>(config, store);
    s->SetModel(model);
    return s;
  });
  Orchestrator o(FastConfig(2), std::move(launcher));
  o.Start();
  ASSERT_TRUE(o.WaitForHealthy(2, 10s));
  std::set<std::string> served_by;
  std::optional<double> probability;
  for (int i = 0; i < 4; ++i) {
    const auto reply = o.Dispatch({"POST", "/predict", json{{"patient_id", ids[0]}}.dump()});
    ASSERT_EQ(reply.status, 200);
    const json body = json::parse(reply.body);
    served_by.insert(body["replica_id"].get<std::string>());
    if (probability) EXPECT_EQ(*probability, body["probability"].get<double>());
    probability = body["probability"].get<double>();
  }
  EXPECT_EQ(served_by.size(), 2u);
  o.Stop();
}

}  // namespace
}  // namespace sepsisflow::orchestrator
