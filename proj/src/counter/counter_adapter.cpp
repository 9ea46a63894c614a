#include "reactorkit/counter/counter_adapter.hpp"

#include <string>

#include "reactorkit/log.hpp"

namespace reactorkit::counter {

std::optional<CounterEvent> parse_counter_event(std::string_view name) {
  if (name == "increment") return CounterEvent::increment;
  if (name == "decrement") return CounterEvent::decrement;
  if (name == "reset") return CounterEvent::reset;
  return std::nullopt;
}

std::string_view to_string(CounterEvent event) {
  switch (event) {
    case CounterEvent::increment: return "increment";
    case CounterEvent::decrement: return "decrement";
    case CounterEvent::reset: return "reset";
  }
  return "?";
}

CounterAdapter::CounterAdapter(LoopHandle loop, BoundedCounter model, ViewSink sink)
    : m_loop(std::move(loop)), m_model(model), m_sink(std::move(sink)) {}

void CounterAdapter::on_event(CounterEvent event) {
  m_loop.assert_on_loop();
  switch (event) {
    case CounterEvent::increment:
      if (m_model.is_full()) {
        log(LogLevel::info, "counter: increment ignored at maximum");
      } else {
        m_model.increment();
      }
      break;
    case CounterEvent::decrement:
      if (m_model.is_empty()) {
        log(LogLevel::info, "counter: decrement ignored at minimum");
      } else {
        m_model.decrement();
      }
      break;
    case CounterEvent::reset:
      m_model.reset();
      break;
  }
  update_view();
}

void CounterAdapter::refresh() {
  m_loop.assert_on_loop();
  update_view();
}

CounterViewState CounterAdapter::view() const {
  m_loop.assert_on_loop();
  return project_view(m_model);
}

const BoundedCounter& CounterAdapter::model() const {
  m_loop.assert_on_loop();
  return m_model;
}

int CounterAdapter::save_state() const {
  m_loop.assert_on_loop();
  return m_model.get();
}

void CounterAdapter::restore_state(int saved) {
  m_loop.assert_on_loop();
  m_model.restore(saved);
  update_view();
}

void CounterAdapter::update_view() {
  if (m_sink) m_sink(project_view(m_model));
}

}  // namespace reactorkit::counter
