#include "reactorkit/timekit/timer_clock.hpp"

#include <stdexcept>

#include "reactorkit/log.hpp"

namespace reactorkit::timekit {

TimerClock::TimerClock(ClockListener listener) : m_listener(std::move(listener)) {
  m_thread = std::thread([this] { run(); });
}

TimerClock::~TimerClock() {
  {
    std::lock_guard lock{m_mutex};
    m_shutdown = true;
  }
  m_wake.notify_all();
  if (m_thread.joinable()) {
    if (on_timer_thread()) {
      m_thread.detach();
    } else {
      m_thread.join();
    }
  }
}

void TimerClock::set_clock_listener(ClockListener listener) {
  std::lock_guard lock{m_mutex};
  m_listener = std::move(listener);
}

void TimerClock::set_error_reporter(std::function<void(const std::string&)> reporter) {
  std::lock_guard lock{m_mutex};
  m_reporter = std::move(reporter);
}

void TimerClock::start_tick(int period_s) {
  if (period_s < 1) throw std::invalid_argument("tick period must be at least one second");
  start_tick_every(std::chrono::seconds{period_s});
}

void TimerClock::start_tick_every(Duration period) {
  if (period <= Duration::zero()) throw std::invalid_argument("tick period must be positive");
  {
    std::lock_guard lock{m_mutex};
    if (m_period) throw AlreadyTicking{};
    m_period = period;
    m_tick_due = Clock::now() + period;
    ++m_tick_generation;
  }
  m_wake.notify_all();
}

void TimerClock::stop_tick() {
  {
    std::lock_guard lock{m_mutex};
    if (!m_period) return;
    m_period.reset();
    ++m_tick_generation;
  }
  m_wake.notify_all();
}

void TimerClock::restart_timeout(int delay_s) {
  if (delay_s < 1) throw std::invalid_argument("timeout delay must be at least one second");
  restart_timeout_after(std::chrono::seconds{delay_s});
}

void TimerClock::restart_timeout_after(Duration delay) {
  if (delay < Duration::zero()) throw std::invalid_argument("timeout delay must not be negative");
  {
    std::lock_guard lock{m_mutex};
    m_timeout_due = Clock::now() + delay;
  }
  m_wake.notify_all();
}

void TimerClock::cancel_timeout() {
  std::lock_guard lock{m_mutex};
  m_timeout_due.reset();
}

void TimerClock::quiesce() {
  if (on_timer_thread()) throw std::logic_error("quiesce called from the timer thread");
  std::unique_lock lock{m_mutex};
  m_idle.wait(lock, [this] { return !m_in_flight; });
}

bool TimerClock::ticking() const {
  std::lock_guard lock{m_mutex};
  return m_period.has_value();
}

bool TimerClock::timeout_pending() const {
  std::lock_guard lock{m_mutex};
  return m_timeout_due.has_value();
}

void TimerClock::run() {
  std::unique_lock lock{m_mutex};
  while (!m_shutdown) {
    std::optional<Clock::time_point> next;
    if (m_period) next = m_tick_due;
    if (m_timeout_due && (!next || *m_timeout_due < *next)) next = m_timeout_due;

    if (!next) {
      m_wake.wait(lock);
      continue;
    }
    if (Clock::now() < *next) {
      m_wake.wait_until(lock, *next);
      continue;
    }

    // Ties go to the tick.
    const bool tick = m_period && m_tick_due <= *next;
    std::function<void()> callback;
    std::uint64_t generation = m_tick_generation;
    if (tick) {
      callback = m_listener.on_tick;
    } else {
      m_timeout_due.reset();
      callback = m_listener.on_timeout;
    }

    m_in_flight = true;
    lock.unlock();
    deliver(callback, tick ? "tick" : "timeout");
    lock.lock();
    m_in_flight = false;
    m_idle.notify_all();

    if (tick && m_period && generation == m_tick_generation) {
      m_tick_due = Clock::now() + *m_period;
    }
  }
}

void TimerClock::deliver(const std::function<void()>& callback, const char* what) {
  if (!callback) return;
  try {
    callback();
  } catch (const std::exception& e) {
    std::function<void(const std::string&)> reporter;
    {
      std::lock_guard lock{m_mutex};
      reporter = m_reporter;
    }
    const std::string message = std::string{what} + " listener failed: " + e.what();
    if (reporter) {
      reporter(message);
    } else {
      log(LogLevel::error, message);
    }
  }
}

}  // namespace reactorkit::timekit
