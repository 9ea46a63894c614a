#include "reactorkit/timer/time_model.hpp"

#include <stdexcept>

namespace reactorkit::timer {

BoundedTimeModel::BoundedTimeModel(int max_time) : m_max(max_time) {
  if (max_time < 1 || max_time > 99) {
    throw std::invalid_argument("max time must fit the two-digit display (1..99)");
  }
}

std::string_view to_string(TimerStateId id) {
  switch (id) {
    case TimerStateId::stopped: return "stopped";
    case TimerStateId::running: return "running";
    case TimerStateId::ringing: return "ringing";
  }
  return "?";
}

std::string_view button_label(TimerStateId id) {
  switch (id) {
    case TimerStateId::stopped: return "increment";
    case TimerStateId::running: return "cancel";
    case TimerStateId::ringing: return "stop";
  }
  return "?";
}

std::string format_display(int seconds) {
  if (seconds < 0 || seconds > 99) throw std::out_of_range("display shows 00..99 only");
  std::string out(2, '0');
  out[0] = static_cast<char>('0' + seconds / 10);
  out[1] = static_cast<char>('0' + seconds % 10);
  return out;
}

}  // namespace reactorkit::timer
