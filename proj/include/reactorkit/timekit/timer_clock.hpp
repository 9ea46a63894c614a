#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "reactorkit/timekit/clock.hpp"

namespace reactorkit::timekit {

/// Real-time ClockModel backed by one dedicated timer thread.
///
/// Recurring ticks are fixed-delay: the next tick is due one period after the previous
/// delivery returned. Control methods may be called from any thread, including from inside
/// a callback on the timer thread. A listener exception is caught and handed to the error
/// reporter.
class TimerClock final : public ClockModel {
 public:
  using Duration = std::chrono::milliseconds;

  explicit TimerClock(ClockListener listener = {});
  ~TimerClock() override;

  TimerClock(const TimerClock&) = delete;
  TimerClock& operator=(const TimerClock&) = delete;

  void set_clock_listener(ClockListener listener) override;
  void start_tick(int period_s) override;
  void stop_tick() override;
  void restart_timeout(int delay_s) override;

  /// Millisecond variants; the second-based API forwards here.
  void start_tick_every(Duration period);
  void restart_timeout_after(Duration delay);
  void cancel_timeout();

  /// Blocks until no callback is in flight. After stop_tick() followed by quiesce(), no
  /// further tick is delivered. Must not be called from the timer thread.
  void quiesce();

  bool ticking() const;
  bool timeout_pending() const;
  bool on_timer_thread() const noexcept { return std::this_thread::get_id() == m_thread.get_id(); }

  void set_error_reporter(std::function<void(const std::string&)> reporter);

 private:
  using Clock = std::chrono::steady_clock;

  void run();
  void deliver(const std::function<void()>& callback, const char* what);

  mutable std::mutex m_mutex;
  std::condition_variable m_wake;
  std::condition_variable m_idle;
  ClockListener m_listener;
  std::function<void(const std::string&)> m_reporter;

  std::optional<Duration> m_period;
  Clock::time_point m_tick_due{};
  std::uint64_t m_tick_generation = 0;
  std::optional<Clock::time_point> m_timeout_due;

  bool m_in_flight = false;
  bool m_shutdown = false;
  std::thread m_thread;
};

}  // namespace reactorkit::timekit
