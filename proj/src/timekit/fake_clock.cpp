#include "reactorkit/timekit/fake_clock.hpp"

#include <stdexcept>

namespace reactorkit::timekit {

void FakeClock::start_tick(int period_s) {
  if (period_s < 1) throw std::invalid_argument("tick period must be at least one second");
  if (m_tick) throw AlreadyTicking{};
  const std::int64_t period = std::int64_t{period_s} * 1000;
  m_tick = Recurring{m_now + period, period};
}

void FakeClock::stop_tick() { m_tick.reset(); }

void FakeClock::restart_timeout(int delay_s) {
  if (delay_s < 1) throw std::invalid_argument("timeout delay must be at least one second");
  m_timeout_due = m_now + std::int64_t{delay_s} * 1000;
}

std::size_t FakeClock::advance(std::int64_t delta_ms) {
  if (delta_ms < 0) throw std::invalid_argument("cannot advance by a negative amount");
  if (m_advancing.exchange(true)) throw std::logic_error("FakeClock::advance is not reentrant");
  struct Release {
    std::atomic<bool>& flag;
    ~Release() { flag.store(false); }
  } release{m_advancing};

  const std::int64_t target = m_now + delta_ms;
  std::size_t delivered = 0;
  for (;;) {
    const bool tick_due = m_tick && m_tick->due <= target;
    const bool timeout_due = m_timeout_due && *m_timeout_due <= target;
    if (!tick_due && !timeout_due) break;

    const bool tick = tick_due && (!timeout_due || m_tick->due <= *m_timeout_due);
    if (tick) {
      m_now = m_tick->due;
      m_tick->due += m_tick->period;
      m_trace.push_back({m_now, FiringKind::tick});
      ++delivered;
      if (m_listener.on_tick) m_listener.on_tick();
    } else {
      m_now = *m_timeout_due;
      m_timeout_due.reset();
      m_trace.push_back({m_now, FiringKind::timeout});
      ++delivered;
      if (m_listener.on_timeout) m_listener.on_timeout();
    }
  }
  m_now = target;
  return delivered;
}

std::string FakeClock::trace_text() const {
  std::string out;
  for (const auto& firing : m_trace) {
    out += std::to_string(firing.due_ms);
    out += firing.kind == FiringKind::tick ? " tick\n" : " timeout\n";
  }
  return out;
}

}  // namespace reactorkit::timekit
