#pragma once

#include <functional>
#include <stdexcept>

namespace reactorkit::timekit {

/// The two events a clock delivers. Callbacks run on the clock's delivery thread: the
/// timer thread for TimerClock, the advancing thread for FakeClock.
struct ClockListener {
  std::function<void()> on_tick;
  std::function<void()> on_timeout;
};

class AlreadyTicking : public std::logic_error {
 public:
  AlreadyTicking() : std::logic_error("a recurring tick is already active") {}
};

/// One recurring registration and one restartable one-shot, both in whole seconds.
class ClockModel {
 public:
  virtual ~ClockModel() = default;

  virtual void set_clock_listener(ClockListener listener) = 0;

  /// First tick after one full period, then every period. Throws AlreadyTicking if a
  /// recurring registration is active, std::invalid_argument if period < 1.
  virtual void start_tick(int period_s) = 0;

  /// Idempotent.
  virtual void stop_tick() = 0;

  /// Cancels any pending one-shot and arms a new one at now + delay.
  virtual void restart_timeout(int delay_s) = 0;
};

}  // namespace reactorkit::timekit
