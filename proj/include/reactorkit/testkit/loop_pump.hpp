#pragma once

#include <cstddef>
#include <memory>

#include "reactorkit/event_loop.hpp"

namespace reactorkit::testkit {

/// A loop whose thread is the test thread. Posted actions are held, from any thread, until
/// the test calls pump().
class LoopPump {
 public:
  /// The constructing thread becomes the loop thread.
  LoopPump();
  /// Later posts through outstanding handles throw EnqueueOnClosed.
  ~LoopPump();

  LoopPump(const LoopPump&) = delete;
  LoopPump& operator=(const LoopPump&) = delete;

  LoopHandle handle() const;

  /// Runs held actions in post order, including ones they post, until none are left.
  /// Returns how many ran. Loop thread only. An action's exception propagates after the
  /// actions before it have run; the rest stay held.
  std::size_t pump();

  std::size_t held() const;

 private:
  class Context;
  std::shared_ptr<Context> m_context;
};

}  // namespace reactorkit::testkit
