#include "reactorkit/counter/bounded_counter.hpp"

#include <string>

namespace reactorkit::counter {

BoundedCounter::BoundedCounter(int min, int max) : m_min(min), m_max(max), m_value(min) {
  if (min > max) {
    throw std::invalid_argument("counter min " + std::to_string(min) + " exceeds max " +
                                std::to_string(max));
  }
}

void BoundedCounter::increment() {
  if (is_full()) throw CounterFull{};
  ++m_value;
}

void BoundedCounter::decrement() {
  if (is_empty()) throw CounterEmpty{};
  --m_value;
}

void BoundedCounter::restore(int value) {
  if (value < m_min || value > m_max) {
    throw std::out_of_range("saved counter value " + std::to_string(value) + " is outside [" +
                            std::to_string(m_min) + ", " + std::to_string(m_max) + "]");
  }
  m_value = value;
}

CounterPhase phase_of(const BoundedCounter& counter) noexcept {
  if (counter.is_empty()) return CounterPhase::minimum;
  if (counter.is_full()) return CounterPhase::maximum;
  return CounterPhase::counting;
}

std::string_view to_string(CounterPhase phase) {
  switch (phase) {
    case CounterPhase::minimum: return "minimum";
    case CounterPhase::counting: return "counting";
    case CounterPhase::maximum: return "maximum";
  }
  return "?";
}

CounterViewState project_view(const BoundedCounter& counter) noexcept {
  return CounterViewState{counter.get(), !counter.is_full(), !counter.is_empty(), true};
}

}  // namespace reactorkit::counter
