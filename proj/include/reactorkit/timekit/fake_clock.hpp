#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reactorkit/timekit/clock.hpp"

namespace reactorkit::timekit {

enum class FiringKind { tick, timeout };

struct Firing {
  std::int64_t due_ms;
  FiringKind kind;

  bool operator==(const Firing&) const = default;
};

/// Deterministic ClockModel driven by explicit advance() calls.
///
/// Firings are delivered synchronously on the advancing thread in due-time order. At equal
/// due times a recurring tick goes before a one-shot timeout. Callbacks may call back into
/// the clock; new registrations are timed from the firing's due time.
///
/// Single-threaded: a concurrent or re-entrant advance() throws std::logic_error.
class FakeClock final : public ClockModel {
 public:
  explicit FakeClock(ClockListener listener = {}) : m_listener(std::move(listener)) {}

  void set_clock_listener(ClockListener listener) override { m_listener = std::move(listener); }
  void start_tick(int period_s) override;
  void stop_tick() override;
  void restart_timeout(int delay_s) override;

  /// Moves virtual time forward by `delta_ms` and returns the number of firings delivered.
  std::size_t advance(std::int64_t delta_ms);

  std::int64_t now_ms() const noexcept { return m_now; }
  bool ticking() const noexcept { return m_tick.has_value(); }
  bool timeout_pending() const noexcept { return m_timeout_due.has_value(); }

  /// Every firing delivered so far.
  const std::vector<Firing>& trace() const noexcept { return m_trace; }
  std::string trace_text() const;

 private:
  struct Recurring {
    std::int64_t due;
    std::int64_t period;
  };

  ClockListener m_listener;
  std::int64_t m_now = 0;
  std::optional<Recurring> m_tick;
  std::optional<std::int64_t> m_timeout_due;
  std::vector<Firing> m_trace;
  std::atomic<bool> m_advancing{false};
};

}  // namespace reactorkit::timekit
