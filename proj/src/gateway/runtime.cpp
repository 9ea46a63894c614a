#include "reactorkit/gateway/runtime.hpp"

#include <chrono>
#include <thread>

#include "reactorkit/log.hpp"
#include "reactorkit/timekit/timer_clock.hpp"

namespace reactorkit::gateway {

namespace {

const std::string counter_app = "counter";
const std::string timer_app = "timer";
const std::string prime_app = "prime";
const std::string clock_app = "clock";

}  // namespace

Runtime::Runtime(RuntimeConfig config, RuntimeOptions options)
    : m_config(config), m_options(options) {
  m_config.validate();
  m_loop = std::make_unique<LoopThread>();
  const LoopHandle loop = m_loop->handle();
  m_executor = taskkit::make_pool_executor(static_cast<std::size_t>(config.prime.pool_size));

  m_counter = std::make_unique<counter::CounterAdapter>(
      loop, counter::BoundedCounter{config.counter.min, config.counter.max},
      [this](const counter::CounterViewState& v) {
        broadcast(Outbound{counter_app, MessageType::view, counter_body(v)});
      });

  std::unique_ptr<timekit::ClockModel> clock;
  if (options.fake_clock) {
    auto fake = std::make_unique<timekit::FakeClock>();
    m_fake_clock = fake.get();
    clock = std::move(fake);
  } else {
    clock = std::make_unique<timekit::TimerClock>();
  }
  m_timer = std::make_unique<timer::TimerApp>(
      loop, std::move(clock),
      [this](const timer::TimerViewState& v) {
        broadcast(Outbound{timer_app, MessageType::view, timer_body(v)});
      },
      timer::TimerConfig{config.timer.idle_timeout_s, config.timer.tick_period_s},
      config.timer.max_time);

  m_prime = std::make_unique<prime::PrimeChecker>(
      loop, m_executor,
      [this](const prime::PrimeViewState& v) {
        broadcast(Outbound{prime_app, MessageType::view, prime_body(v)});
      },
      prime::PrimeCheckerConfig{static_cast<std::size_t>(config.prime.slots),
                                static_cast<std::size_t>(config.prime.chunk_budget)});

  m_timer->start();
  m_loop->drain();
}

Runtime::~Runtime() {
  try {
    m_loop->invoke([this] {
      m_prime->cancel_all();
      m_peers.clear();
    });
  } catch (const std::exception& e) {
    log(LogLevel::warn, std::string("runtime shutdown: ") + e.what());
  }
  m_timer.reset();
  m_loop->stop();
  m_executor->shutdown();
}

Runtime::ConnectionId Runtime::attach(std::shared_ptr<Connection> connection) {
  const ConnectionId id = m_next_id++;
  m_loop->loop().post([this, id, connection = std::move(connection)] {
    m_peers[id] = Peer{connection, 0};
    for (const auto& message : snapshot()) send(id, message);
  });
  return id;
}

void Runtime::detach(ConnectionId id) {
  try {
    m_loop->loop().post([this, id] { m_peers.erase(id); });
  } catch (const EnqueueOnClosed&) {
  }
}

void Runtime::submit(ConnectionId from, std::string text) {
  m_loop->loop().post([this, from, text = std::move(text)] { handle(from, text); });
}

void Runtime::settle() {
  using namespace std::chrono_literals;
  for (;;) {
    if (!m_executor->idle()) {
      std::this_thread::sleep_for(1ms);
      continue;
    }
    const bool quiet =
        m_loop->invoke([this] { return m_loop->loop().pending() == 0 && m_executor->idle(); });
    if (quiet) return;
    std::this_thread::sleep_for(1ms);
  }
}

std::vector<Outbound> Runtime::snapshot() const {
  return {view_of(counter_app), view_of(timer_app), view_of(prime_app)};
}

Outbound Runtime::view_of(const std::string& app) const {
  if (app == counter_app) return {app, MessageType::view, counter_body(m_counter->view())};
  if (app == timer_app) return {app, MessageType::view, timer_body(m_timer->view())};
  return {prime_app, MessageType::view, prime_body(m_prime->view())};
}

void Runtime::handle(ConnectionId from, const std::string& text) {
  const auto peer = m_peers.find(from);
  if (peer == m_peers.end()) return;
  const std::uint64_t before = peer->second.delivered;

  std::string app{gateway_app};
  try {
    const Inbound in = parse_inbound(text);
    app = in.app;
    dispatch(from, in);
  } catch (const ProtocolError& e) {
    app = e.app();
    send(from, error_message(e.app(), e.what()));
  } catch (const std::exception& e) {
    send(from, error_message(app, e.what()));
  }

  m_loop->loop().post([this, from, before, app] {
    const auto p = m_peers.find(from);
    if (p == m_peers.end() || p->second.delivered != before) return;
    if (app == counter_app || app == timer_app || app == prime_app) {
      send(from, view_of(app));
    } else {
      send(from, info_message(app, Json{{"status", "ok"}}));
    }
  });
}

void Runtime::dispatch(ConnectionId from, const Inbound& in) {
  if (in.app == counter_app) {
    if (in.event == "snapshot") return send(from, view_of(counter_app));
    const auto event = counter::parse_counter_event(in.event);
    if (!event) throw ProtocolError(in.app, "unknown event: " + in.event);
    m_counter->on_event(*event);
    return;
  }
  if (in.app == timer_app) {
    if (in.event == "snapshot") return send(from, view_of(timer_app));
    if (in.event != "button_press") throw ProtocolError(in.app, "unknown event: " + in.event);
    m_timer->press_button();
    return;
  }
  if (in.app == prime_app) {
    if (in.event == "snapshot") return send(from, view_of(prime_app));
    if (in.event == "cancel_all") {
      m_prime->cancel_all();
      return;
    }
    if (in.event != "check") throw ProtocolError(in.app, "unknown event: " + in.event);
    const auto n_arg = in.args.find("n");
    if (n_arg == in.args.end()) throw ProtocolError(in.app, "invalid number");
    const std::int64_t n = parse_number(in.app, *n_arg);
    if (n < 0) throw ProtocolError(in.app, "invalid number");
    prime::PrimeRunMode mode = prime::PrimeRunMode::async;
    if (const auto m = in.args.find("mode"); m != in.args.end()) {
      if (!m->is_string()) throw ProtocolError(in.app, "invalid mode");
      try {
        mode = prime::parse_run_mode(m->get<std::string>());
      } catch (const std::invalid_argument&) {
        throw ProtocolError(in.app, "invalid mode");
      }
    }
    m_prime->check(n, mode);
    return;
  }
  if (in.app == clock_app && m_fake_clock) {
    if (in.event != "advance") throw ProtocolError(in.app, "unknown event: " + in.event);
    const auto ms = in.args.find("ms");
    if (ms == in.args.end()) throw ProtocolError(in.app, "invalid number");
    const std::int64_t delta = parse_number(in.app, *ms);
    if (delta < 0) throw ProtocolError(in.app, "invalid number");
    const std::size_t fired = m_fake_clock->advance(delta);
    send(from, info_message(in.app, Json{{"now_ms", m_fake_clock->now_ms()}, {"fired", fired}}));
    return;
  }
  throw ProtocolError(in.app, "unknown app: " + in.app);
}

void Runtime::send(ConnectionId to, const Outbound& message) {
  const auto peer = m_peers.find(to);
  if (peer == m_peers.end()) return;
  ++peer->second.delivered;
  peer->second.connection->deliver(message);
}

void Runtime::broadcast(const Outbound& message) {
  for (auto& [id, peer] : m_peers) {
    ++peer.delivered;
    peer.connection->deliver(message);
  }
}

}  // namespace reactorkit::gateway
