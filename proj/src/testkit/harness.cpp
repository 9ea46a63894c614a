#include "reactorkit/testkit/harness.hpp"

#include <thread>

namespace reactorkit::testkit {

namespace {

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

void Harness::tick(int) { throw UnsupportedStep("tick needs a clockless harness"); }
void Harness::timeout() { throw UnsupportedStep("timeout needs a clockless harness"); }

// Counter

CounterHarness::CounterHarness(int min, int max)
    : m_adapter(m_pump.handle(), counter::BoundedCounter{min, max},
                [this](const counter::CounterViewState& v) { m_updates.push_back(v); }) {
  m_adapter.refresh();
}

bool CounterHarness::perform_click(std::string_view id) {
  const auto event = counter::parse_counter_event(id);
  if (!event) throw UnknownComponent(id);
  m_adapter.on_event(*event);
  return true;
}

void CounterHarness::advance(std::chrono::milliseconds) { m_pump.pump(); }

Observation CounterHarness::observe() const {
  const auto v = m_adapter.view();
  return {{"value", std::to_string(v.displayed)},
          {"inc", flag(v.inc_enabled)},
          {"dec", flag(v.dec_enabled)},
          {"reset", flag(v.reset_enabled)}};
}

std::vector<std::string> CounterHarness::components() const {
  return {"increment", "decrement", "reset"};
}

// Timer on a clock

TimerHarness::TimerHarness(TimeSource source, timer::TimerConfig config, int max_time)
    : m_source(source) {
  std::unique_ptr<timekit::ClockModel> clock;
  if (source == TimeSource::fake) {
    clock = std::make_unique<timekit::FakeClock>();
  } else {
    clock = std::make_unique<timekit::TimerClock>();
  }
  m_clock = clock.get();
  m_app = std::make_unique<timer::TimerApp>(m_pump.handle(), std::move(clock), nullptr, config,
                                            max_time);
  m_app->start();
  m_pump.pump();
}

TimerHarness::~TimerHarness() { m_app.reset(); }

timekit::FakeClock& TimerHarness::fake_clock() {
  if (m_source != TimeSource::fake) throw std::logic_error("harness runs on a real clock");
  return static_cast<timekit::FakeClock&>(*m_clock);
}

bool TimerHarness::perform_click(std::string_view id) {
  if (id != "button") throw UnknownComponent(id);
  m_app->press_button();
  return true;
}

void TimerHarness::advance(std::chrono::milliseconds ms) {
  if (m_source == TimeSource::fake) {
    fake_clock().advance(ms.count());
  } else {
    std::this_thread::sleep_for(ms);
  }
  m_pump.pump();
}

Observation TimerHarness::observe() const {
  const auto v = m_app->view();
  return {{"display", v.display()},
          {"time", std::to_string(v.time)},
          {"state", std::string(to_string(v.state))},
          {"ringing", flag(v.ringing)},
          {"label", std::string(v.label())}};
}

// Timer against the unified mock

TimerMockHarness::TimerMockHarness(timer::TimerConfig config)
    : m_machine(m_mock, m_mock, m_mock, config) {
  m_machine.on_start();
}

bool TimerMockHarness::perform_click(std::string_view id) {
  if (id != "button") throw UnknownComponent(id);
  m_machine.on_button_press();
  return true;
}

void TimerMockHarness::advance(std::chrono::milliseconds) {
  throw UnsupportedStep("the mock has no clock; use tick or timeout");
}

void TimerMockHarness::tick(int count) {
  for (int i = 0; i < count; ++i) m_machine.on_tick();
}

void TimerMockHarness::timeout() { m_machine.on_timeout(); }

Observation TimerMockHarness::observe() const {
  const auto state = m_mock.state();
  return {{"time", std::to_string(m_mock.time())},
          {"state", state ? std::string(to_string(*state)) : "none"},
          {"ringing", flag(m_mock.ringing())},
          {"started", flag(m_mock.started())}};
}

}  // namespace reactorkit::testkit
