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


#include "sepsisflow/service/http_server.h"

#include <chrono>
#include <condition_variable>
#include <mutex>

#include <spdlog/spdlog.h>

#include "httplib.h"

namespace sepsisflow::service {

namespace {

// Unbounded: every accepted connection gets its own thread, so long-lived
// keep-alive clients never starve each other.
class ThreadPerConnection final : public httplib::TaskQueue {
 public:
  bool enqueue(std::function<void()> fn) override {
    {
      std::lock_guard lock(mu_);
      ++active_;
    }
    std::thread([this, fn = std::move(fn)] {
      fn();
      std::lock_guard lock(mu_);
      --active_;
      cv_.notify_all();
    }).detach();
    return true;
  }

  void shutdown() override {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return active_ == 0; });
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int active_ = 0;
};

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
  HttpHandler handler;
  std::string source;
};

HttpServer::HttpServer(HttpHandler handler, int threads, std::string source)
    : impl_(std::make_unique<Impl>()) {
  impl_->handler = std::move(handler);
  impl_->source = std::move(source);
  if (threads > 0) {
    const auto pool_size = static_cast<std::size_t>(threads);
    impl_->server.new_task_queue = [pool_size] { return new httplib::ThreadPool(pool_size); };
  } else {
    impl_->server.new_task_queue = [] { return new ThreadPerConnection(); };
  }
  impl_->server.set_keep_alive_max_count(1000000);
  impl_->server.set_keep_alive_timeout(5);
  impl_->server.set_tcp_nodelay(true);
  // Browser clients on another origin.
  impl_->server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  impl_->server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Max-Age", "600");
  });

  auto dispatch = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    const auto start = std::chrono::steady_clock::now();
    HttpReply reply;
    try {
      reply = impl->handler({req.method, req.path, req.body});
    } catch (const std::exception& e) {
      reply.status = 500;
      reply.body = ApiResponse::Failure(500, "internal_error", e.what()).body;
    }
    res.status = reply.status;
    for (const auto& [name, value] : reply.headers) res.set_header(name, value);
    res.set_content(reply.body, "application/json");
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const auto replica = reply.headers.find(kReplicaHeader);
    spdlog::info("request source={} method={} path={} status={} replica_id={} latency_ms={:.3f}",
                 impl->source, req.method, req.path, reply.status,
                 replica == reply.headers.end() ? "-" : replica->second, ms);
  };
  impl_->server.Get(".*", dispatch);
  impl_->server.Post(".*", dispatch);
  impl_->server.Put(".*", dispatch);
  impl_->server.Delete(".*", dispatch);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
  } else {
    port_ = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (port_ < 0) {
    throw Error("bind_failed", "cannot bind " + host + ":" + std::to_string(port));
  }
  return port_;
}

void HttpServer::Run() { impl_->server.listen_after_bind(); }

void HttpServer::Start() {
  thread_ = std::thread([this] { Run(); });
  impl_->server.wait_until_ready();
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

HttpHandler ServiceHandler(const PredictionService& service) {
  return [&service](const HttpRequest& req) {
    const ApiResponse r = service.Handle(req.method, req.path, req.body);
    return HttpReply{r.status, r.body, {{kReplicaHeader, service.config().replica_id}}};
  };
}

}  // namespace sepsisflow::service
