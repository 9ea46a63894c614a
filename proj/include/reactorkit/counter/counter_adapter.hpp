#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "reactorkit/counter/bounded_counter.hpp"
#include "reactorkit/event_loop.hpp"

namespace reactorkit::counter {

enum class CounterEvent { increment, decrement, reset };

std::optional<CounterEvent> parse_counter_event(std::string_view name);
std::string_view to_string(CounterEvent event);

/// Mediates between view events and the bounded counter. Every event, including one for a
/// disabled control, ends in exactly one view update.
class CounterAdapter {
 public:
  using ViewSink = std::function<void(const CounterViewState&)>;

  CounterAdapter(LoopHandle loop, BoundedCounter model, ViewSink sink);

  /// Loop thread only (throws ConfinementViolation otherwise). Events for disabled controls
  /// leave the model unchanged and are logged at info level.
  void on_event(CounterEvent event);

  /// Re-emits the current view without touching the model.
  void refresh();

  CounterViewState view() const;
  const BoundedCounter& model() const;

  /// Saved state is just the value; bounds come from configuration.
  int save_state() const;
  void restore_state(int saved);

 private:
  void update_view();

  LoopHandle m_loop;
  BoundedCounter m_model;
  ViewSink m_sink;
};

}  // namespace reactorkit::counter
