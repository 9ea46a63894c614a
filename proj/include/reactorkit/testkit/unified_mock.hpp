#pragma once

#include <optional>
#include <stdexcept>

#include "reactorkit/timekit/clock.hpp"
#include "reactorkit/timer/time_model.hpp"

namespace reactorkit::testkit {

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Stands in for all three dependencies of the timer state machine at once and records
/// what the machine did to them. Nothing ticks on its own: tests call on_tick/on_timeout.
class UnifiedMock final : public timer::TimeModel,
                          public timekit::ClockModel,
                          public timer::TimerUIUpdateListener {
 public:
  static constexpr int max_time = 99;

  /// Last value shown; -1 until the first update.
  int time() const noexcept { return m_time_value; }
  /// nullopt until the first state update.
  std::optional<timer::TimerStateId> state() const noexcept { return m_state; }
  bool started() const noexcept { return m_started; }
  bool ringing() const noexcept { return m_ringing; }
  int timeout_restarts() const noexcept { return m_timeout_restarts; }

  // TimerUIUpdateListener
  void update_time(int seconds) override { m_time_value = seconds; }
  void update_state(timer::TimerStateId state) override { m_state = state; }
  void ring_alarm(bool on) override { m_ringing = on; }

  // ClockModel
  void set_clock_listener(timekit::ClockListener) override {
    throw UnsupportedOperation("the unified mock does not deliver clock events");
  }
  void start_tick(int) override { m_started = true; }
  void stop_tick() override { m_started = false; }
  void restart_timeout(int) override { ++m_timeout_restarts; }

  // TimeModel, clamped to [0, 99]
  void reset() override { m_running_time = 0; }
  void inc() override {
    if (m_running_time != max_time) ++m_running_time;
  }
  void dec() override {
    if (m_running_time != 0) --m_running_time;
  }
  int get() const override { return m_running_time; }

 private:
  int m_time_value = -1;
  std::optional<timer::TimerStateId> m_state;
  int m_running_time = -1;
  bool m_started = false;
  bool m_ringing = false;
  int m_timeout_restarts = 0;
};

}  // namespace reactorkit::testkit
