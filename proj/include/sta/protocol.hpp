#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sta/world.hpp"

// Newline-delimited JSON wire protocol; schema in docs/protocol.md.
// Requests: reset, step, info. Responses: state, outcome, error, info.
// A successful step yields two lines (outcome, then state); everything else
// yields one. Malformed input never terminates a session.

namespace sta {

inline constexpr const char* kProtocolVersion = "1";

class Session {
 public:
  // default_config backs reset requests that name neither preset nor config.
  explicit Session(std::optional<EnvConfig> default_config = std::nullopt);
  ~Session();
  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;

  // Never throws on malformed input; returns the response lines.
  std::vector<std::string> handle_line(const std::string& line);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Serves one session over stdin/stdout until EOF. Returns a process exit code.
int serve_stdio(std::optional<EnvConfig> default_config);

// TCP transport on 127.0.0.1; one independent session per connection.
class TcpServer {
 public:
  // port 0 picks an ephemeral port; throws Error when binding fails.
  TcpServer(std::optional<EnvConfig> default_config, int port);
  ~TcpServer();

  int port() const;
  void run();        // accept loop; blocks until stop()
  void run_async();  // accept loop on a background thread
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sta
