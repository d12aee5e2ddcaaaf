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


// Minimal blocking HTTP/1.1 client over one keep-alive socket. Counts every
// byte that crosses the socket, headers included.

#ifndef SEPSISFLOW_LOADGEN_HTTP_CLIENT_H_
#define SEPSISFLOW_LOADGEN_HTTP_CLIENT_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

#include "sepsisflow/common/error.h"

namespace sepsisflow::loadgen {

struct Url {
  std::string host;
  int port = 80;
  // Path prefix without a trailing slash; empty for the root.
  std::string base_path;
};

// Accepts http://host[:port][/prefix]. Throws Error("invalid_url").
Url ParseUrl(const std::string& text);

class TransportError : public Error {
 public:
  explicit TransportError(const std::string& detail) : Error("transport_error", detail) {}
};

class TimeoutError : public Error {
 public:
  explicit TimeoutError(const std::string& detail) : Error("timeout", detail) {}
};

struct HttpResponse {
  int status = 0;
  // Header names lower-cased.
  std::map<std::string, std::string> headers;
  std::string body;
};

class HttpConnection {
 public:
  HttpConnection(std::string host, int port);
  ~HttpConnection();
  HttpConnection(const HttpConnection&) = delete;
  HttpConnection& operator=(const HttpConnection&) = delete;

  // Connects lazily and reconnects after a failure. The timeout bounds the
  // whole exchange. Throws TimeoutError or TransportError; the connection is
  // closed afterwards.
  HttpResponse Request(const std::string& method, const std::string& path,
                       const std::string& body, std::chrono::milliseconds timeout);

  void Close();
  std::uint64_t bytes_sent() const { return bytes_sent_; }
  std::uint64_t bytes_received() const { return bytes_received_; }

 private:
  using Clock = std::chrono::steady_clock;

  void Connect(Clock::time_point deadline);
  void SendAll(const std::string& data, Clock::time_point deadline);
  // Appends at least one byte to buffer_; false on orderly EOF.
  bool Fill(Clock::time_point deadline);
  std::string ReadLine(Clock::time_point deadline);
  std::string ReadExactly(std::size_t n, Clock::time_point deadline);
  void WaitFor(short events, Clock::time_point deadline);

  std::string host_;
  int port_;
  int fd_ = -1;
  std::string buffer_;
  std::uint64_t bytes_sent_ = 0;
  std::uint64_t bytes_received_ = 0;
};

}  // namespace sepsisflow::loadgen

#endif  // SEPSISFLOW_LOADGEN_HTTP_CLIENT_H_
