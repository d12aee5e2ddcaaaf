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


#include <atomic>

#include "sepsisflow/orchestrator/launcher.h"

namespace sepsisflow::orchestrator {
namespace {

class InProcessHandle final : public ReplicaHandle {
 public:
  InProcessHandle(std::unique_ptr<service::PredictionService> service, int threads,
                  const std::string& replica_id)
      : service_(std::move(service)),
        server_(std::make_unique<service::HttpServer>(service::ServiceHandler(*service_), threads,
                                                      replica_id)) {
    port_ = server_->Bind("127.0.0.1", 0);
    server_->Start();
  }
  ~InProcessHandle() override { server_->Stop(); }

  int port() const override { return port_; }
  bool Alive() override { return !stopped_; }
  void Terminate() override {
    server_->Stop();
    stopped_ = true;
  }
  void Kill() override { Terminate(); }

 private:
  std::unique_ptr<service::PredictionService> service_;
  std::unique_ptr<service::HttpServer> server_;
  int port_ = -1;
  std::atomic<bool> stopped_{false};
};

}  // namespace

InProcessLauncher::InProcessLauncher(ServiceFactory factory, int threads_per_replica)
    : factory_(std::move(factory)), threads_per_replica_(threads_per_replica) {}

std::unique_ptr<ReplicaHandle> InProcessLauncher::Launch(const std::string& replica_id) {
  try {
    return std::make_unique<InProcessHandle>(factory_(replica_id), threads_per_replica_,
                                             replica_id);
  } catch (const std::exception& e) {
    throw SpawnFailure(replica_id, e.what());
  }
}

}  // namespace sepsisflow::orchestrator
