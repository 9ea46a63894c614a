#pragma once

#include <string>
#include <string_view>

namespace reactorkit::timer {

/// Remaining running time in whole seconds.
class TimeModel {
 public:
  virtual ~TimeModel() = default;
  virtual void reset() = 0;
  virtual void inc() = 0;
  virtual void dec() = 0;
  virtual int get() const = 0;
};

/// Clamped to [0, max_time]; inc at the top and dec at zero do nothing.
class BoundedTimeModel final : public TimeModel {
 public:
  static constexpr int default_max_time = 99;

  explicit BoundedTimeModel(int max_time = default_max_time);

  void reset() override { m_time = 0; }
  void inc() override {
    if (m_time != m_max) ++m_time;
  }
  void dec() override {
    if (m_time != 0) --m_time;
  }
  int get() const override { return m_time; }
  int max_time() const noexcept { return m_max; }

 private:
  int m_max;
  int m_time = 0;
};

enum class TimerStateId { stopped, running, ringing };

std::string_view to_string(TimerStateId id);
/// The multifunction button's label in each state.
std::string_view button_label(TimerStateId id);

/// Two-digit, zero-padded seconds display ("00".."99").
std::string format_display(int seconds);

/// Events flowing from the state machine to the UI. Implementations must not assume they
/// are called on the loop thread; the adapter reschedules.
class TimerUIUpdateListener {
 public:
  virtual ~TimerUIUpdateListener() = default;
  virtual void update_time(int seconds) = 0;
  virtual void update_state(TimerStateId state) = 0;
  virtual void ring_alarm(bool on) = 0;
};

}  // namespace reactorkit::timer
