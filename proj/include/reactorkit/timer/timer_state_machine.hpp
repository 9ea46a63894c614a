#pragma once

#include <mutex>
#include <optional>

#include "reactorkit/timekit/clock.hpp"
#include "reactorkit/timer/time_model.hpp"

namespace reactorkit::timer {

struct TimerConfig {
  int idle_timeout_s = 3;
  int tick_period_s = 1;
};

/// State and time read together under the monitor.
struct TimerSnapshot {
  std::optional<TimerStateId> state;
  int time = 0;

  bool operator==(const TimerSnapshot&) const = default;
};

/// Countdown timer behavior as a State-pattern machine with STOPPED, RUNNING and RINGING.
///
/// The public entry points form a monitor: they may be called from the loop thread and from
/// clock threads concurrently and are serialized by one lock. Events a state does not
/// declare are ignored.
///
/// The clock is not told about this machine; wire `clock_listener()` into it when assembling.
class TimerStateMachine {
 public:
  TimerStateMachine(TimeModel& time, timekit::ClockModel& clock, TimerUIUpdateListener& ui,
                    TimerConfig config = {});

  TimerStateMachine(const TimerStateMachine&) = delete;
  TimerStateMachine& operator=(const TimerStateMachine&) = delete;

  /// Leaves the initial pseudo-state for STOPPED, running its entry actions.
  void on_start();
  void on_button_press();
  void on_tick();
  void on_timeout();

  /// nullopt before on_start().
  std::optional<TimerStateId> state() const;
  int time() const;
  TimerSnapshot snapshot() const;

  timekit::ClockListener clock_listener();

 private:
  class State {
   public:
    explicit State(TimerStateMachine& sm) : m_sm(sm) {}
    virtual ~State() = default;
    virtual void on_entry() {}
    virtual void on_exit() {}
    virtual void on_button_press() {}
    virtual void on_tick() {}
    virtual void on_timeout() {}
    virtual std::optional<TimerStateId> id() const = 0;

   protected:
    TimerStateMachine& m_sm;
  };

  class Initial final : public State {
   public:
    using State::State;
    std::optional<TimerStateId> id() const override { return std::nullopt; }
  };

  class Stopped final : public State {
   public:
    using State::State;
    void on_entry() override;
    void on_button_press() override;
    void on_timeout() override;
    std::optional<TimerStateId> id() const override { return TimerStateId::stopped; }
  };

  class Running final : public State {
   public:
    using State::State;
    void on_entry() override;
    void on_exit() override;
    void on_button_press() override;
    void on_tick() override;
    std::optional<TimerStateId> id() const override { return TimerStateId::running; }
  };

  class Ringing final : public State {
   public:
    using State::State;
    void on_entry() override;
    void on_exit() override;
    void on_button_press() override;
    std::optional<TimerStateId> id() const override { return TimerStateId::ringing; }
  };

  /// exit actions, swap, update_state, entry actions.
  void set_state(State& next);
  void update_ui_runtime();

  TimeModel& m_time;
  timekit::ClockModel& m_clock;
  TimerUIUpdateListener& m_ui;
  TimerConfig m_config;

  Initial m_initial{*this};
  Stopped m_stopped{*this};
  Running m_running{*this};
  Ringing m_ringing{*this};
  State* m_state = &m_initial;

  mutable std::mutex m_monitor;
};

}  // namespace reactorkit::timer
