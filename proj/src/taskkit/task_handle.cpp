#include "reactorkit/taskkit/task_handle.hpp"

#include "reactorkit/log.hpp"

namespace reactorkit::taskkit {

std::string_view to_string(TaskState state) {
  switch (state) {
    case TaskState::pending: return "pending";
    case TaskState::running: return "running";
    case TaskState::done: return "done";
    case TaskState::cancelled: return "cancelled";
  }
  return "?";
}

TaskState TaskControl::state() const {
  std::lock_guard lock{m_mutex};
  return m_state;
}

bool TaskControl::request_cancel() {
  std::function<void()> canceller;
  {
    std::lock_guard lock{m_mutex};
    if (m_state == TaskState::done || m_state == TaskState::cancelled) return false;
    m_cancel.store(true, std::memory_order_release);
    if (m_state == TaskState::pending && m_canceller) {
      m_state = TaskState::cancelled;
      canceller = std::move(m_canceller);
      m_canceller = nullptr;
    }
  }
  if (canceller) {
    try {
      canceller();
    } catch (const std::exception& e) {
      log(LogLevel::warn, std::string{"delivering cancellation failed: "} + e.what());
    }
  }
  return true;
}

bool TaskControl::mark_executed() {
  std::lock_guard lock{m_mutex};
  if (m_executed) return false;
  m_executed = true;
  return true;
}

TaskControl::Start TaskControl::try_start() {
  std::lock_guard lock{m_mutex};
  if (m_state != TaskState::pending) return Start::skip;
  m_canceller = nullptr;
  if (m_cancel.load(std::memory_order_acquire)) {
    m_state = TaskState::cancelled;
    return Start::cancel;
  }
  m_state = TaskState::running;
  return Start::run;
}

TaskState TaskControl::finish(bool failed) {
  std::lock_guard lock{m_mutex};
  if (m_state == TaskState::running) {
    m_state = (failed || m_cancel.load(std::memory_order_acquire)) ? TaskState::cancelled
                                                                    : TaskState::done;
  }
  return m_state;
}

bool TaskControl::cancel_pending() {
  std::lock_guard lock{m_mutex};
  if (m_state != TaskState::pending) return false;
  m_cancel.store(true, std::memory_order_release);
  m_state = TaskState::cancelled;
  m_canceller = nullptr;
  return true;
}

void TaskControl::set_pending_canceller(std::function<void()> canceller) {
  std::lock_guard lock{m_mutex};
  m_canceller = std::move(canceller);
}

bool TaskHandle::cancel(bool /*may_interrupt_if_running*/) const {
  return m_control && m_control->request_cancel();
}

}  // namespace reactorkit::taskkit
