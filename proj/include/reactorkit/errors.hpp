#pragma once

#include <stdexcept>
#include <string>
#include <thread>

namespace reactorkit {

/// Raised when an event or action is offered to a queue that has shut down.
class EnqueueOnClosed : public std::runtime_error {
 public:
  EnqueueOnClosed() : std::runtime_error("event queue is closed") {}
};

/// Raised when loop-confined state is touched from any thread other than the loop thread.
class ConfinementViolation : public std::logic_error {
 public:
  explicit ConfinementViolation(std::thread::id offender);

  std::thread::id offender() const noexcept { return m_offender; }

 private:
  std::thread::id m_offender;
};

}  // namespace reactorkit
