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


// Starting and stopping replicas.

#ifndef SEPSISFLOW_ORCHESTRATOR_LAUNCHER_H_
#define SEPSISFLOW_ORCHESTRATOR_LAUNCHER_H_

#include <sys/types.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sepsisflow/common/error.h"
#include "sepsisflow/service/http_server.h"
#include "sepsisflow/service/prediction_service.h"

namespace sepsisflow::orchestrator {

class SpawnFailure : public Error {
 public:
  SpawnFailure(const std::string& replica_id, const std::string& detail)
      : Error("spawn_failure", replica_id + ": " + detail) {}
};

// A running replica listening on a local port.
class ReplicaHandle {
 public:
  virtual ~ReplicaHandle() = default;
  virtual int port() const = 0;
  // False once the replica has exited; never blocks.
  virtual bool Alive() = 0;
  // Graceful stop; returns after the replica is gone.
  virtual void Terminate() = 0;
  // Abrupt stop used for fault injection; does not wait.
  virtual void Kill() = 0;
  // Process id, or -1 for in-process replicas.
  virtual pid_t pid() const { return -1; }
};

class ReplicaLauncher {
 public:
  virtual ~ReplicaLauncher() = default;
  // Blocks until the replica has bound its port. Throws SpawnFailure.
  virtual std::unique_ptr<ReplicaHandle> Launch(const std::string& replica_id) = 0;
};

// Runs each replica as `<executable> worker --replica-id ID --port 0 ...`.
// The worker prints "LISTENING <port>" on stdout once bound.
class ProcessLauncher final : public ReplicaLauncher {
 public:
  // `extra_args` are appended to every worker command line.
  ProcessLauncher(std::filesystem::path executable, std::vector<std::string> extra_args,
                  std::chrono::milliseconds startup_timeout = std::chrono::seconds(10));
  std::unique_ptr<ReplicaHandle> Launch(const std::string& replica_id) override;

 private:
  std::filesystem::path executable_;
  std::vector<std::string> extra_args_;
  std::chrono::milliseconds startup_timeout_;
};

// Replicas as HTTP servers inside this process, for tests.
class InProcessLauncher final : public ReplicaLauncher {
 public:
  using ServiceFactory =
      std::function<std::unique_ptr<service::PredictionService>(const std::string& replica_id)>;

  InProcessLauncher(ServiceFactory factory, int threads_per_replica = 4);
  std::unique_ptr<ReplicaHandle> Launch(const std::string& replica_id) override;

 private:
  ServiceFactory factory_;
  int threads_per_replica_;
};

// Line printed by workers once their port is bound.
inline constexpr const char* kListeningPrefix = "LISTENING ";

}  // namespace sepsisflow::orchestrator

#endif  // SEPSISFLOW_ORCHESTRATOR_LAUNCHER_H_
