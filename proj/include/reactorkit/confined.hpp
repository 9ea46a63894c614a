#pragma once

#include <utility>

#include "reactorkit/event_loop.hpp"

namespace reactorkit {

/// A value owned by the loop thread. Every read and write checks the caller's thread
/// identity and throws ConfinementViolation off the loop.
template <typename V>
class ConfinedCell {
 public:
  explicit ConfinedCell(LoopHandle owner, V initial = V{})
      : m_owner(std::move(owner)), m_value(std::move(initial)) {}

  const V& get() const {
    m_owner.assert_on_loop();
    return m_value;
  }

  void set(V value) {
    m_owner.assert_on_loop();
    m_value = std::move(value);
  }

  template <typename F>
  decltype(auto) with(F&& fn) {
    m_owner.assert_on_loop();
    return std::forward<F>(fn)(m_value);
  }

  const LoopHandle& owner() const noexcept { return m_owner; }

 private:
  LoopHandle m_owner;
  V m_value;
};

template <typename V>
void assert_confined(const ConfinedCell<V>& cell) {
  cell.owner().assert_on_loop();
}

}  // namespace reactorkit
