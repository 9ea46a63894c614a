#include "reactorkit/timer/timer_state_machine.hpp"

#include <stdexcept>

namespace reactorkit::timer {

TimerStateMachine::TimerStateMachine(TimeModel& time, timekit::ClockModel& clock,
                                     TimerUIUpdateListener& ui, TimerConfig config)
    : m_time(time), m_clock(clock), m_ui(ui), m_config(config) {
  if (config.idle_timeout_s < 1 || config.tick_period_s < 1) {
    throw std::invalid_argument("timer timeout and tick period must be at least one second");
  }
}

void TimerStateMachine::on_start() {
  std::lock_guard lock{m_monitor};
  if (m_state != &m_initial) return;
  set_state(m_stopped);
}

void TimerStateMachine::on_button_press() {
  std::lock_guard lock{m_monitor};
  m_state->on_button_press();
}

void TimerStateMachine::on_tick() {
  std::lock_guard lock{m_monitor};
  m_state->on_tick();
}

void TimerStateMachine::on_timeout() {
  std::lock_guard lock{m_monitor};
  m_state->on_timeout();
}

std::optional<TimerStateId> TimerStateMachine::state() const {
  std::lock_guard lock{m_monitor};
  return m_state->id();
}

int TimerStateMachine::time() const {
  std::lock_guard lock{m_monitor};
  return m_time.get();
}

TimerSnapshot TimerStateMachine::snapshot() const {
  std::lock_guard lock{m_monitor};
  return {m_state->id(), m_time.get()};
}

timekit::ClockListener TimerStateMachine::clock_listener() {
  return timekit::ClockListener{[this] { on_tick(); }, [this] { on_timeout(); }};
}

void TimerStateMachine::set_state(State& next) {
  m_state->on_exit();
  m_state = &next;
  m_ui.update_state(*m_state->id());
  m_state->on_entry();
}

void TimerStateMachine::update_ui_runtime() { m_ui.update_time(m_time.get()); }

// STOPPED: every press adds a second and restarts the idle timeout.

void TimerStateMachine::Stopped::on_entry() {
  m_sm.m_time.reset();
  m_sm.update_ui_runtime();
}

void TimerStateMachine::Stopped::on_button_press() {
  m_sm.m_clock.restart_timeout(m_sm.m_config.idle_timeout_s);
  m_sm.m_time.inc();
  m_sm.update_ui_runtime();
}

void TimerStateMachine::Stopped::on_timeout() {
  // A stray timeout at zero leaves the timer stopped.
  if (m_sm.m_time.get() > 0) m_sm.set_state(m_sm.m_running);
}

// RUNNING: counts down once per tick.

void TimerStateMachine::Running::on_entry() { m_sm.m_clock.start_tick(m_sm.m_config.tick_period_s); }

void TimerStateMachine::Running::on_exit() { m_sm.m_clock.stop_tick(); }

void TimerStateMachine::Running::on_button_press() { m_sm.set_state(m_sm.m_stopped); }

void TimerStateMachine::Running::on_tick() {
  m_sm.m_time.dec();
  m_sm.update_ui_runtime();
  if (m_sm.m_time.get() == 0) m_sm.set_state(m_sm.m_ringing);
}

// RINGING: waits for the press that silences it.

void TimerStateMachine::Ringing::on_entry() { m_sm.m_ui.ring_alarm(true); }

void TimerStateMachine::Ringing::on_exit() { m_sm.m_ui.ring_alarm(false); }

void TimerStateMachine::Ringing::on_button_press() { m_sm.set_state(m_sm.m_stopped); }

}  // namespace reactorkit::timer
