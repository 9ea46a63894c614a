#pragma once

#include <functional>
#include <memory>
#include <string>

#include "reactorkit/confined.hpp"
#include "reactorkit/timekit/clock.hpp"
#include "reactorkit/timer/time_model.hpp"
#include "reactorkit/timer/timer_state_machine.hpp"

namespace reactorkit::timer {

struct TimerViewState {
  int time = 0;
  TimerStateId state = TimerStateId::stopped;
  bool ringing = false;

  std::string display() const { return format_display(time); }
  std::string_view label() const { return button_label(state); }

  bool operator==(const TimerViewState&) const = default;
};

/// The UI side of the timer. Updates may arrive on clock threads; each one is rescheduled
/// onto the loop, applied to loop-confined view state, and forwarded to the sink there.
class TimerAdapter final : public TimerUIUpdateListener {
 public:
  using ViewSink = std::function<void(const TimerViewState&)>;

  TimerAdapter(LoopHandle loop, ViewSink sink);

  void update_time(int seconds) override;
  void update_state(TimerStateId state) override;
  void ring_alarm(bool on) override;

  /// Loop thread only.
  TimerViewState view() const;

 private:
  struct Inner {
    Inner(LoopHandle loop, ViewSink s) : view(std::move(loop)), sink(std::move(s)) {}
    ConfinedCell<TimerViewState> view;
    ViewSink sink;
  };

  template <typename F>
  void apply(F&& change);

  LoopHandle m_loop;
  std::shared_ptr<Inner> m_inner;
};

/// Time model, clock, state machine and adapter assembled into one app.
class TimerApp {
 public:
  TimerApp(LoopHandle loop, std::unique_ptr<timekit::ClockModel> clock, TimerAdapter::ViewSink sink,
           TimerConfig config = {}, int max_time = BoundedTimeModel::default_max_time);
  ~TimerApp();

  TimerApp(const TimerApp&) = delete;
  TimerApp& operator=(const TimerApp&) = delete;

  /// Boots the machine into STOPPED.
  void start() { m_machine.on_start(); }

  /// The multifunction button. Loop thread only.
  void press_button();

  /// Loop thread only.
  TimerViewState view() const { return m_adapter.view(); }

  TimerStateMachine& machine() noexcept { return m_machine; }
  timekit::ClockModel& clock() noexcept { return *m_clock; }

 private:
  LoopHandle m_loop;
  std::unique_ptr<timekit::ClockModel> m_clock;
  BoundedTimeModel m_time;
  TimerAdapter m_adapter;
  TimerStateMachine m_machine;
};

}  // namespace reactorkit::timer
