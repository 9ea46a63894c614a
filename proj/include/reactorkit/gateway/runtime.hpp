#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "reactorkit/counter/counter_adapter.hpp"
#include "reactorkit/event_loop.hpp"
#include "reactorkit/gateway/config.hpp"
#include "reactorkit/gateway/protocol.hpp"
#include "reactorkit/prime/prime_checker.hpp"
#include "reactorkit/taskkit/executor.hpp"
#include "reactorkit/timekit/fake_clock.hpp"
#include "reactorkit/timer/timer_adapter.hpp"

namespace reactorkit::gateway {

/// One client of the runtime. deliver() runs on the loop thread and must not block for long.
class Connection {
 public:
  virtual ~Connection() = default;
  virtual void deliver(const Outbound& message) = 0;
};

struct RuntimeOptions {
  /// Drive the timer from a FakeClock and accept {"app":"clock","event":"advance","args":{"ms":n}}.
  bool fake_clock = false;
};

/// The three apps on one shared loop, plus the connections watching them.
///
/// Inbound text is parsed and handled on the loop thread, never on the caller's. View
/// changes go to every connection; errors and info replies only to the sender. An inbound
/// event that produced nothing for its sender is answered with a snapshot of its app.
class Runtime {
 public:
  using ConnectionId = std::uint64_t;

  explicit Runtime(RuntimeConfig config, RuntimeOptions options = {});
  ~Runtime();

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  /// Any thread. The connection receives one view snapshot per app, then live updates.
  ConnectionId attach(std::shared_ptr<Connection> connection);
  /// Any thread. Nothing is delivered to the connection after the loop processes this.
  void detach(ConnectionId id);
  /// Any thread.
  void submit(ConnectionId from, std::string text);

  /// Blocks until the loop has nothing queued and no background check is running.
  void settle();

  /// Views of all three apps, counter first. Loop thread only.
  std::vector<Outbound> snapshot() const;

  const RuntimeConfig& config() const noexcept { return m_config; }
  const RuntimeOptions& options() const noexcept { return m_options; }
  LoopThread& loop() noexcept { return *m_loop; }

 private:
  struct Peer {
    std::shared_ptr<Connection> connection;
    std::uint64_t delivered = 0;
  };

  void handle(ConnectionId from, const std::string& text);
  void dispatch(ConnectionId from, const Inbound& in);
  void send(ConnectionId to, const Outbound& message);
  void broadcast(const Outbound& message);
  Outbound view_of(const std::string& app) const;

  RuntimeConfig m_config;
  RuntimeOptions m_options;
  std::unique_ptr<LoopThread> m_loop;
  std::shared_ptr<taskkit::Executor> m_executor;
  std::unique_ptr<counter::CounterAdapter> m_counter;
  timekit::FakeClock* m_fake_clock = nullptr;
  std::unique_ptr<timer::TimerApp> m_timer;
  std::unique_ptr<prime::PrimeChecker> m_prime;

  // Loop-confined.
  std::map<ConnectionId, Peer> m_peers;
  std::atomic<ConnectionId> m_next_id{1};
};

}  // namespace reactorkit::gateway
