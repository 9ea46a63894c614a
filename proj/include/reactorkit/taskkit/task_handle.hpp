#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string_view>

namespace reactorkit::taskkit {

enum class TaskState { pending, running, done, cancelled };

std::string_view to_string(TaskState state);

class AlreadyExecuted : public std::logic_error {
 public:
  AlreadyExecuted() : std::logic_error("task has already been executed") {}
};

/// Lifecycle state shared by a task's handle, its background body and its loop callbacks.
///
/// Transitions: pending -> running -> {done, cancelled} and pending -> cancelled. The cancel
/// flag is sticky once set.
class TaskControl {
 public:
  enum class Start { run, skip, cancel };

  TaskState state() const;
  bool cancel_requested() const noexcept { return m_cancel.load(std::memory_order_acquire); }

  /// The cancel() contract. Returns false once terminal.
  bool request_cancel();

  /// Claims the one-and-only execution. False if already executed.
  bool mark_executed();

  /// pending -> running, unless the task was cancelled in the meantime.
  Start try_start();

  /// running -> done, or -> cancelled when cancellation was requested or the body failed.
  TaskState finish(bool failed = false);

  /// pending -> cancelled. Returns whether this call made the transition.
  bool cancel_pending();

  /// Runs, outside the lock, when request_cancel() moves a pending task straight to cancelled.
  void set_pending_canceller(std::function<void()> canceller);

 private:
  mutable std::mutex m_mutex;
  TaskState m_state = TaskState::pending;
  std::atomic<bool> m_cancel{false};
  bool m_executed = false;
  std::function<void()> m_canceller;
};

/// What callers hold to observe or cancel a task. Cheap to copy, safe from any thread.
class TaskHandle {
 public:
  TaskHandle() = default;
  explicit TaskHandle(std::shared_ptr<TaskControl> control) : m_control(std::move(control)) {}

  /// Cooperative only: running bodies observe the flag at their next poll.
  /// `may_interrupt_if_running` is accepted for API familiarity and ignored.
  bool cancel(bool may_interrupt_if_running = false) const;

  bool is_cancelled() const { return m_control && m_control->cancel_requested(); }
  TaskState state() const { return m_control ? m_control->state() : TaskState::pending; }
  bool finished() const {
    const auto s = state();
    return s == TaskState::done || s == TaskState::cancelled;
  }

  explicit operator bool() const noexcept { return m_control != nullptr; }

 private:
  std::shared_ptr<TaskControl> m_control;
};

}  // namespace reactorkit::taskkit
