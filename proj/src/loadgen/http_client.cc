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


#include "sepsisflow/loadgen/http_client.h"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include <fmt/format.h>

namespace sepsisflow::loadgen {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Url ParseUrl(const std::string& text) {
  constexpr std::string_view kScheme = "http://";
  if (text.rfind(kScheme, 0) != 0) {
    throw Error("invalid_url", "only http:// URLs are supported: " + text);
  }
  std::string rest = text.substr(kScheme.size());
  Url url;
  const auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  if (slash != std::string::npos) url.base_path = rest.substr(slash);
  while (!url.base_path.empty() && url.base_path.back() == '/') url.base_path.pop_back();
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      url.port = std::stoi(authority.substr(colon + 1), &used);
      if (used != authority.size() - colon - 1) throw std::invalid_argument("port");
    } catch (const std::exception&) {
      throw Error("invalid_url", "bad port in " + text);
    }
    authority = authority.substr(0, colon);
  }
  if (authority.empty() || url.port < 1 || url.port > 65535) {
    throw Error("invalid_url", "bad host or port in " + text);
  }
  url.host = authority;
  return url;
}

HttpConnection::HttpConnection(std::string host, int port)
    : host_(std::move(host)), port_(port) {}

HttpConnection::~HttpConnection() { Close(); }

void HttpConnection::Close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  buffer_.clear();
}

void HttpConnection::WaitFor(short events, Clock::time_point deadline) {
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) throw TimeoutError("request timed out");
    pollfd p{fd_, events, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(left.count()));
    if (rc > 0) return;
    if (rc == 0) throw TimeoutError("request timed out");
    if (errno != EINTR) throw TransportError(std::strerror(errno));
  }
}

void HttpConnection::Connect(Clock::time_point deadline) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const int gai = ::getaddrinfo(host_.c_str(), std::to_string(port_).c_str(), &hints, &res);
  if (gai != 0 || res == nullptr) {
    throw TransportError(fmt::format("resolve {}: {}", host_, ::gai_strerror(gai)));
  }
  fd_ = ::socket(res->ai_family, SOCK_STREAM | SOCK_NONBLOCK | SOCK_CLOEXEC, 0);
  if (fd_ < 0) {
    ::freeaddrinfo(res);
    throw TransportError(std::strerror(errno));
  }
  const int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  const int rc = ::connect(fd_, res->ai_addr, res->ai_addrlen);
  ::freeaddrinfo(res);
  if (rc != 0 && errno != EINPROGRESS) {
    const std::string err = std::strerror(errno);
    Close();
    throw TransportError("connect: " + err);
  }
  if (rc != 0) {
    WaitFor(POLLOUT, deadline);
    int so_error = 0;
    socklen_t len = sizeof(so_error);
    ::getsockopt(fd_, SOL_SOCKET, SO_ERROR, &so_error, &len);
    if (so_error != 0) {
      Close();
      throw TransportError(std::string("connect: ") + std::strerror(so_error));
    }
  }
}

void HttpConnection::SendAll(const std::string& data, Clock::time_point deadline) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n > 0) {
      off += static_cast<std::size_t>(n);
      bytes_sent_ += static_cast<std::uint64_t>(n);
    } else if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      WaitFor(POLLOUT, deadline);
    } else if (n < 0 && errno == EINTR) {
      continue;
    } else {
      throw TransportError(std::string("send: ") + std::strerror(errno));
    }
  }
}

bool HttpConnection::Fill(Clock::time_point deadline) {
  char chunk[16384];
  for (;;) {
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(n));
      bytes_received_ += static_cast<std::uint64_t>(n);
      return true;
    }
    if (n == 0) return false;
    if (errno == EAGAIN || errno == EWOULDBLOCK) {
      WaitFor(POLLIN, deadline);
    } else if (errno != EINTR) {
      throw TransportError(std::string("recv: ") + std::strerror(errno));
    }
  }
}

std::string HttpConnection::ReadLine(Clock::time_point deadline) {
  for (;;) {
    const auto eol = buffer_.find("\r\n");
    if (eol != std::string::npos) {
      std::string line = buffer_.substr(0, eol);
      buffer_.erase(0, eol + 2);
      return line;
    }
    if (!Fill(deadline)) throw TransportError("connection closed mid-response");
  }
}

std::string HttpConnection::ReadExactly(std::size_t n, Clock::time_point deadline) {
  while (buffer_.size() < n) {
    if (!Fill(deadline)) throw TransportError("connection closed mid-body");
  }
  std::string out = buffer_.substr(0, n);
  buffer_.erase(0, n);
  return out;
}

HttpResponse HttpConnection::Request(const std::string& method, const std::string& path,
                                     const std::string& body,
                                     std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  try {
    // A kept-alive socket the server already closed shows up as readable.
    if (fd_ >= 0) {
      pollfd p{fd_, POLLIN, 0};
      if (::poll(&p, 1, 0) > 0) Close();
    }
    if (fd_ < 0) Connect(deadline);

    std::string head = fmt::format("{} {} HTTP/1.1\r\nHost: {}:{}\r\n", method, path,
                                   host_, port_);
    if (!body.empty() || method == "POST" || method == "PUT") {
      head += fmt::format("Content-Type: application/json\r\nContent-Length: {}\r\n",
                          body.size());
    }
    head += "\r\n";
    SendAll(head + body, deadline);

    HttpResponse resp;
    const std::string status_line = ReadLine(deadline);
    if (status_line.rfind("HTTP/1.", 0) != 0 || status_line.size() < 12) {
      throw TransportError("bad status line: " + status_line);
    }
    resp.status = std::atoi(status_line.c_str() + 9);
    for (;;) {
      const std::string line = ReadLine(deadline);
      if (line.empty()) break;
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      resp.headers[Lower(Trim(line.substr(0, colon)))] = Trim(line.substr(colon + 1));
    }

    const auto te = resp.headers.find("transfer-encoding");
    const auto cl = resp.headers.find("content-length");
    if (te != resp.headers.end() && Lower(te->second).find("chunked") != std::string::npos) {
      for (;;) {
        const std::size_t size = std::stoul(ReadLine(deadline), nullptr, 16);
        if (size == 0) {
          while (!ReadLine(deadline).empty()) {
          }
          break;
        }
        resp.body += ReadExactly(size, deadline);
        ReadLine(deadline);
      }
    } else if (cl != resp.headers.end()) {
      resp.body = ReadExactly(std::stoul(cl->second), deadline);
    } else if (resp.status >= 200 && resp.status != 204 && resp.status != 304 &&
               method != "HEAD") {
      while (Fill(deadline)) {
      }
      resp.body.swap(buffer_);
      Close();
      return resp;
    }

    const auto conn = resp.headers.find("connection");
    if (conn != resp.headers.end() && Lower(conn->second) == "close") Close();
    return resp;
  } catch (const std::invalid_argument&) {
    Close();
    throw TransportError("malformed response framing");
  } catch (const std::out_of_range&) {
    Close();
    throw TransportError("malformed response framing");
  } catch (...) {
    Close();
    throw;
  }
}

}  // namespace sepsisflow::loadgen
