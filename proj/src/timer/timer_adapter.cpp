#include "reactorkit/timer/timer_adapter.hpp"

#include "reactorkit/log.hpp"

namespace reactorkit::timer {

TimerAdapter::TimerAdapter(LoopHandle loop, ViewSink sink)
    : m_loop(loop), m_inner(std::make_shared<Inner>(std::move(loop), std::move(sink))) {}

template <typename F>
void TimerAdapter::apply(F&& change) {
  try {
    m_loop.post([inner = m_inner, change = std::forward<F>(change)] {
      inner->view.with(change);
      if (inner->sink) inner->sink(inner->view.get());
    });
  } catch (const EnqueueOnClosed&) {
    log(LogLevel::debug, "timer update dropped: loop is closed");
  }
}

void TimerAdapter::update_time(int seconds) {
  apply([seconds](TimerViewState& v) { v.time = seconds; });
}

void TimerAdapter::update_state(TimerStateId state) {
  apply([state](TimerViewState& v) { v.state = state; });
}

void TimerAdapter::ring_alarm(bool on) {
  apply([on](TimerViewState& v) { v.ringing = on; });
}

TimerViewState TimerAdapter::view() const { return m_inner->view.get(); }

TimerApp::TimerApp(LoopHandle loop, std::unique_ptr<timekit::ClockModel> clock,
                   TimerAdapter::ViewSink sink, TimerConfig config, int max_time)
    : m_loop(loop),
      m_clock(std::move(clock)),
      m_time(max_time),
      m_adapter(loop, std::move(sink)),
      m_machine(m_time, *m_clock, m_adapter, config) {
  m_clock->set_clock_listener(m_machine.clock_listener());
}

TimerApp::~TimerApp() {
  // The clock's thread calls into the machine, so it goes first.
  m_clock.reset();
}

void TimerApp::press_button() {
  m_loop.assert_on_loop();
  m_machine.on_button_press();
}

}  // namespace reactorkit::timer
