#pragma once

#include <stdexcept>
#include <string_view>

namespace reactorkit::counter {

class CounterFull : public std::logic_error {
 public:
  CounterFull() : std::logic_error("counter is at its maximum") {}
};

class CounterEmpty : public std::logic_error {
 public:
  CounterEmpty() : std::logic_error("counter is at its minimum") {}
};

/// Passive integer counter that keeps min <= value <= max. Starts at min.
/// Not synchronized; owned by the loop thread.
class BoundedCounter {
 public:
  static constexpr int default_min = 0;
  static constexpr int default_max = 10;

  BoundedCounter() : BoundedCounter(default_min, default_max) {}
  /// Throws std::invalid_argument if min > max.
  BoundedCounter(int min, int max);

  /// Throws CounterFull at max; the value is left unchanged.
  void increment();
  /// Throws CounterEmpty at min; the value is left unchanged.
  void decrement();
  /// Back to min.
  void reset() noexcept { m_value = m_min; }

  int get() const noexcept { return m_value; }
  int min() const noexcept { return m_min; }
  int max() const noexcept { return m_max; }
  bool is_full() const noexcept { return m_value == m_max; }
  bool is_empty() const noexcept { return m_value == m_min; }

  /// Restores a previously saved value. Throws std::out_of_range outside [min, max].
  void restore(int value);

 private:
  int m_min;
  int m_max;
  int m_value;
};

/// Which of the three model states a counter is in. A counter with min == max reports
/// minimum.
enum class CounterPhase { minimum, counting, maximum };

CounterPhase phase_of(const BoundedCounter& counter) noexcept;
std::string_view to_string(CounterPhase phase);

struct CounterViewState {
  int displayed = 0;
  bool inc_enabled = true;
  bool dec_enabled = false;
  bool reset_enabled = true;

  bool operator==(const CounterViewState&) const = default;
};

/// Controls afforded by the model state: increment unless full, decrement unless empty,
/// reset always.
CounterViewState project_view(const BoundedCounter& counter) noexcept;

}  // namespace reactorkit::counter
