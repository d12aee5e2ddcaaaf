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


#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/prctl.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include <spdlog/spdlog.h>

#include "sepsisflow/orchestrator/launcher.h"

namespace sepsisflow::orchestrator {
namespace {

using Clock = std::chrono::steady_clock;

class ProcessHandle final : public ReplicaHandle {
 public:
  ProcessHandle(pid_t pid, int stdout_fd, int port)
      : pid_(pid), stdout_fd_(stdout_fd), port_(port) {}

  ~ProcessHandle() override {
    if (!reaped_) Terminate();
    if (stdout_fd_ >= 0) ::close(stdout_fd_);
  }

  int port() const override { return port_; }
  pid_t pid() const override { return pid_; }

  bool Alive() override {
    if (reaped_) return false;
    int status = 0;
    const pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_ || (r < 0 && errno == ECHILD)) {
      reaped_ = true;
      return false;
    }
    return true;
  }

  void Terminate() override {
    if (reaped_) return;
    ::kill(pid_, SIGTERM);
    const auto deadline = Clock::now() + std::chrono::seconds(5);
    while (Clock::now() < deadline) {
      if (!Alive()) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    spdlog::warn("replica pid {} ignored SIGTERM; killing", pid_);
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    reaped_ = true;
  }

  void Kill() override {
    if (!reaped_) ::kill(pid_, SIGKILL);
  }

 private:
  pid_t pid_;
  int stdout_fd_;
  int port_;
  bool reaped_ = false;
};

// Reads until "LISTENING <port>\n" or the deadline. Returns -1 on failure.
int ReadListeningPort(int fd, Clock::time_point deadline) {
  std::string buffer;
  while (true) {
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) return -1;
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) return -1;
    char chunk[256];
    const ssize_t n = ::read(fd, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return -1;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t eol;
    while ((eol = buffer.find('\n')) != std::string::npos) {
      const std::string line = buffer.substr(0, eol);
      buffer.erase(0, eol + 1);
      if (line.rfind(kListeningPrefix, 0) == 0) {
        try {
          return std::stoi(line.substr(std::strlen(kListeningPrefix)));
        } catch (const std::exception&) {
          return -1;
        }
      }
    }
  }
}

}  // namespace

ProcessLauncher::ProcessLauncher(std::filesystem::path executable,
                                 std::vector<std::string> extra_args,
                                 std::chrono::milliseconds startup_timeout)
    : executable_(std::move(executable)),
      extra_args_(std::move(extra_args)),
      startup_timeout_(startup_timeout) {}

std::unique_ptr<ReplicaHandle> ProcessLauncher::Launch(const std::string& replica_id) {
  std::vector<std::string> args = {executable_.string(), "worker", "--replica-id", replica_id,
                                   "--port", "0"};
  args.insert(args.end(), extra_args_.begin(), extra_args_.end());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    throw SpawnFailure(replica_id, std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t parent = ::getpid();
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw SpawnFailure(replica_id, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    // Only async-signal-safe calls until exec.
    ::prctl(PR_SET_PDEATHSIG, SIGTERM);
    if (::getppid() != parent) ::_exit(127);
    sigset_t none;
    ::sigemptyset(&none);
    ::sigprocmask(SIG_SETMASK, &none, nullptr);
    ::dup2(fds[1], STDOUT_FILENO);
    ::syscall(SYS_close_range, 3U, ~0U, 0U);
    ::execv(argv[0], argv.data());
    ::_exit(127);
  }
  ::close(fds[1]);
  const int port = ReadListeningPort(fds[0], Clock::now() + startup_timeout_);
  auto handle = std::make_unique<ProcessHandle>(pid, fds[0], port);
  if (port <= 0) {
    handle->Kill();
    handle->Terminate();
    throw SpawnFailure(replica_id, "worker did not report a listening port");
  }
  spdlog::info("replica {} started pid={} port={}", replica_id, pid, port);
  return handle;
}

}  // namespace sepsisflow::orchestrator
