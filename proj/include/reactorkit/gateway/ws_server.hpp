#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "reactorkit/gateway/runtime.hpp"

namespace reactorkit::gateway {

class BindFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WsServerOptions {
  std::string address = "0.0.0.0";
  /// 0 picks a free port; see WsServer::port().
  int port = 8080;
  /// Directory served for plain HTTP GETs. Empty serves nothing but /ws.
  std::string web_root;
};

/// HTTP and WebSocket front end on one port. `/ws` upgrades to a WebSocket carrying one
/// JSON message per frame; other GETs are served from the web root.
///
/// Each connection reads inbound frames into Runtime::submit and writes outbound messages
/// from its own queue, where a pending view for an app is replaced by a newer view for the
/// same app before it is sent.
class WsServer {
 public:
  /// Binds and listens. Throws BindFailure if the port is taken.
  WsServer(Runtime& runtime, WsServerOptions options);
  ~WsServer();

  WsServer(const WsServer&) = delete;
  WsServer& operator=(const WsServer&) = delete;

  int port() const noexcept;

  /// Serves on a background thread.
  void start();
  /// Serves on the calling thread until stop() or, when `until_signal`, SIGINT/SIGTERM.
  void run(bool until_signal = false);
  /// Detaches every connection and stops serving. Idempotent.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

}  // namespace reactorkit::gateway
