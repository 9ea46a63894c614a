#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reactorkit/counter/counter_adapter.hpp"
#include "reactorkit/testkit/loop_pump.hpp"
#include "reactorkit/testkit/unified_mock.hpp"
#include "reactorkit/timekit/fake_clock.hpp"
#include "reactorkit/timekit/timer_clock.hpp"
#include "reactorkit/timer/timer_adapter.hpp"
#include "reactorkit/timer/timer_state_machine.hpp"

namespace reactorkit::testkit {

class UnknownComponent : public std::invalid_argument {
 public:
  explicit UnknownComponent(std::string_view id)
      : std::invalid_argument("unknown component: " + std::string(id)) {}
};

class UnsupportedStep : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Observable view state as key=value text, e.g. {"display": "05", "state": "running"}.
using Observation = std::map<std::string, std::string>;

/// One app wired to a test-thread loop so a script can drive and observe it.
class Harness {
 public:
  virtual ~Harness() = default;

  /// Fires the component's listener as a user click would. Returns true when a listener
  /// took the click, even if the model then ignored it. Throws UnknownComponent.
  virtual bool perform_click(std::string_view id) = 0;

  /// Lets `ms` of time pass (virtual or real) and then pumps the loop.
  virtual void advance(std::chrono::milliseconds ms) = 0;

  /// Delivers clock events straight to the app. Only meaningful without a clock.
  virtual void tick(int count);
  virtual void timeout();

  /// Runs everything the app posted to its loop.
  virtual std::size_t pump() = 0;

  virtual Observation observe() const = 0;
  virtual std::vector<std::string> components() const = 0;

  /// Real-time harnesses accept displayed times within one tick.
  virtual bool real_time() const { return false; }
};

/// The bounded counter. Components: increment, decrement, reset.
class CounterHarness final : public Harness {
 public:
  explicit CounterHarness(int min = counter::BoundedCounter::default_min,
                          int max = counter::BoundedCounter::default_max);

  bool perform_click(std::string_view id) override;
  void advance(std::chrono::milliseconds ms) override;
  std::size_t pump() override { return m_pump.pump(); }
  Observation observe() const override;
  std::vector<std::string> components() const override;

  counter::CounterAdapter& adapter() noexcept { return m_adapter; }
  /// Views pushed to the sink, in order.
  const std::vector<counter::CounterViewState>& updates() const noexcept { return m_updates; }

 private:
  LoopPump m_pump;
  std::vector<counter::CounterViewState> m_updates;
  counter::CounterAdapter m_adapter;
};

enum class TimeSource { fake, real };

/// The full timer app on a fake or real clock. Component: button.
class TimerHarness final : public Harness {
 public:
  explicit TimerHarness(TimeSource source = TimeSource::fake, timer::TimerConfig config = {},
                        int max_time = timer::BoundedTimeModel::default_max_time);
  ~TimerHarness() override;

  bool perform_click(std::string_view id) override;
  void advance(std::chrono::milliseconds ms) override;
  std::size_t pump() override { return m_pump.pump(); }
  Observation observe() const override;
  std::vector<std::string> components() const override { return {"button"}; }
  bool real_time() const override { return m_source == TimeSource::real; }

  timer::TimerApp& app() noexcept { return *m_app; }
  /// Only for TimeSource::fake.
  timekit::FakeClock& fake_clock();

 private:
  TimeSource m_source;
  LoopPump m_pump;
  timekit::ClockModel* m_clock = nullptr;
  std::unique_ptr<timer::TimerApp> m_app;
};

/// The timer state machine against UnifiedMock, driven by explicit tick and timeout steps.
/// Component: button.
class TimerMockHarness final : public Harness {
 public:
  explicit TimerMockHarness(timer::TimerConfig config = {});

  bool perform_click(std::string_view id) override;
  void advance(std::chrono::milliseconds ms) override;
  void tick(int count) override;
  void timeout() override;
  std::size_t pump() override { return 0; }
  Observation observe() const override;
  std::vector<std::string> components() const override { return {"button"}; }

  UnifiedMock& mock() noexcept { return m_mock; }
  timer::TimerStateMachine& machine() noexcept { return m_machine; }

 private:
  UnifiedMock m_mock;
  timer::TimerStateMachine m_machine;
};

}  // namespace reactorkit::testkit
