#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sta/errors.hpp"
#include "sta/protocol.hpp"

namespace sta {

namespace {

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t got =
        ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (got <= 0) return false;
    sent += static_cast<std::size_t>(got);
  }
  return true;
}

// One session per connection, lines split on '\n' (a trailing '\r' is
// tolerated for telnet-style clients).
void serve_connection(int fd, const std::optional<EnvConfig>& default_config) {
  Session session(default_config);
  std::string buffer;
  char chunk[4096];
  for (;;) {
    const ssize_t got = ::recv(fd, chunk, sizeof(chunk), 0);
    if (got <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(got));
    std::size_t newline;
    while ((newline = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, newline);
      buffer.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      for (const std::string& response : session.handle_line(line)) {
        if (!send_all(fd, response + "\n")) {
          ::close(fd);
          return;
        }
      }
    }
  }
  ::close(fd);
}

}  // namespace

struct TcpServer::Impl {
  std::optional<EnvConfig> default_config;
  int listen_fd = -1;
  int port = 0;
  std::atomic<bool> stopping{false};
  std::thread accept_thread;

  std::mutex mu;
  std::vector<std::pair<int, std::thread>> connections;

  ~Impl() { shutdown(); }

  void bind_and_listen(int requested_port) {
    listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd < 0) throw Error("socket() failed: " + errno_text());

    const int one = 1;
    ::setsockopt(listen_fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<std::uint16_t>(requested_port));
    if (::bind(listen_fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
      const std::string why = errno_text();
      ::close(listen_fd);
      listen_fd = -1;
      throw Error("cannot bind 127.0.0.1:" + std::to_string(requested_port) +
                  ": " + why);
    }
    if (::listen(listen_fd, 16) < 0) {
      const std::string why = errno_text();
      ::close(listen_fd);
      listen_fd = -1;
      throw Error("listen() failed: " + why);
    }

    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&bound), &len);
    port = ntohs(bound.sin_port);
  }

  void accept_loop() {
    for (;;) {
      const int fd = ::accept(listen_fd, nullptr, nullptr);
      if (fd < 0) {
        if (stopping.load()) break;
        if (errno == EINTR) continue;
        break;  // listener closed underneath us
      }
      std::lock_guard<std::mutex> lock(mu);
      if (stopping.load()) {
        ::close(fd);
        break;
      }
      connections.emplace_back(
          fd, std::thread(serve_connection, fd, std::cref(default_config)));
    }
  }

  void shutdown() {
    if (stopping.exchange(true)) {
      if (accept_thread.joinable()) accept_thread.join();
      return;
    }
    if (listen_fd >= 0) {
      ::shutdown(listen_fd, SHUT_RDWR);
      ::close(listen_fd);
      listen_fd = -1;
    }
    if (accept_thread.joinable()) accept_thread.join();

    std::vector<std::pair<int, std::thread>> live;
    {
      std::lock_guard<std::mutex> lock(mu);
      live.swap(connections);
    }
    for (auto& [fd, thread] : live) {
      ::shutdown(fd, SHUT_RDWR);  // handler owns the close
      if (thread.joinable()) thread.join();
    }
  }

  static std::string errno_text() { return std::strerror(errno); }
};

TcpServer::TcpServer(std::optional<EnvConfig> default_config, int port)
    : impl_(std::make_unique<Impl>()) {
  impl_->default_config = std::move(default_config);
  impl_->bind_and_listen(port);
}

TcpServer::~TcpServer() = default;

int TcpServer::port() const { return impl_->port; }

void TcpServer::run() { impl_->accept_loop(); }

void TcpServer::run_async() {
  impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
}

void TcpServer::stop() { impl_->shutdown(); }

}  // namespace sta
