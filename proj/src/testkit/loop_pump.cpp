#include "reactorkit/testkit/loop_pump.hpp"

#include <deque>
#include <mutex>
#include <optional>
#include <thread>

namespace reactorkit::testkit {

class LoopPump::Context final : public detail::LoopContext {
 public:
  EventSeq post(Action action) override {
    std::lock_guard lock{m_mutex};
    if (m_closed) throw EnqueueOnClosed{};
    m_held.push_back(std::move(action));
    return m_next_seq++;
  }

  std::thread::id loop_thread() const override { return m_thread; }

  std::optional<Action> next() {
    std::lock_guard lock{m_mutex};
    if (m_held.empty()) return std::nullopt;
    Action a = std::move(m_held.front());
    m_held.pop_front();
    return a;
  }

  std::size_t held() const {
    std::lock_guard lock{m_mutex};
    return m_held.size();
  }

  void close() {
    std::deque<Action> dropped;
    std::lock_guard lock{m_mutex};
    m_closed = true;
    dropped.swap(m_held);
  }

 private:
  const std::thread::id m_thread = std::this_thread::get_id();
  mutable std::mutex m_mutex;
  std::deque<Action> m_held;
  EventSeq m_next_seq = 1;
  bool m_closed = false;
};

LoopPump::LoopPump() : m_context(std::make_shared<Context>()) {}

LoopPump::~LoopPump() { m_context->close(); }

LoopHandle LoopPump::handle() const { return LoopHandle{m_context}; }

std::size_t LoopPump::pump() {
  handle().assert_on_loop();
  std::size_t ran = 0;
  while (auto action = m_context->next()) {
    ++ran;
    (*action)();
  }
  return ran;
}

std::size_t LoopPump::held() const { return m_context->held(); }

}  // namespace reactorkit::testkit
