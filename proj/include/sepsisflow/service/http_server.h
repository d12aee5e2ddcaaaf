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


// Thin HTTP/1.1 server shared by replicas and the front endpoint.

#ifndef SEPSISFLOW_SERVICE_HTTP_SERVER_H_
#define SEPSISFLOW_SERVICE_HTTP_SERVER_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>

#include "sepsisflow/service/prediction_service.h"

namespace sepsisflow::service {

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpReply {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

using HttpHandler = std::function<HttpReply(const HttpRequest&)>;

class HttpServer {
 public:
  // `threads` > 0 bounds the worker pool; 0 serves each connection on its
  // own thread. `source` names the server in request log lines.
  HttpServer(HttpHandler handler, int threads, std::string source);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws
  // Error("bind_failed").
  int Bind(const std::string& host, int port);
  // Serves until Stop(). Bind first.
  void Run();
  // Run() on a background thread; returns once accepting.
  void Start();
  void Stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = -1;
};

// Adapts a PredictionService: routes every request and tags replies with the
// replica id header.
HttpHandler ServiceHandler(const PredictionService& service);

}  // namespace sepsisflow::service

#endif  // SEPSISFLOW_SERVICE_HTTP_SERVER_H_
