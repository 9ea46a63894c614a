#pragma once

#include <any>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>

#include "reactorkit/errors.hpp"

namespace reactorkit {

using Action = std::function<void()>;
using EventSeq = std::uint64_t;

/// A queued unit of input. `seq` is assigned by the queue at enqueue time.
struct Event {
  EventSeq seq = 0;
  std::string source;
  std::string kind;
  std::any payload;
};

using Listener = std::function<void(const Event&)>;

/// Receives (event seq, description) whenever a handler throws or an event has no target.
using ErrorHook = std::function<void(EventSeq, const std::string&)>;

/// Decides whether `incoming` may be merged into the still-pending `tail` event.
/// When it returns true the tail keeps its position and seq and takes the incoming payload.
using CoalescePredicate = std::function<bool(const Event& tail, const Event& incoming)>;

namespace detail {

/// What a LoopHandle points at: something that runs posted actions on one thread.
class LoopContext {
 public:
  virtual ~LoopContext() = default;
  virtual EventSeq post(Action action) = 0;
  virtual std::thread::id loop_thread() const = 0;
};

}  // namespace detail

/// Copyable capability to schedule work onto a loop and to check confinement.
/// Valid from any thread; outlives the loop safely (posts then fail with EnqueueOnClosed).
class LoopHandle {
 public:
  LoopHandle() = default;
  explicit LoopHandle(std::shared_ptr<detail::LoopContext> context) : m_context(std::move(context)) {}

  EventSeq post(Action action) const;

  bool is_loop_thread() const;
  std::thread::id loop_thread() const;

  /// Throws ConfinementViolation unless the caller is the loop thread.
  void assert_on_loop() const;

  explicit operator bool() const noexcept { return m_context != nullptr; }
  bool operator==(const LoopHandle& other) const noexcept { return m_context == other.m_context; }

 private:
  std::shared_ptr<detail::LoopContext> m_context;
};

struct QueueOptions {
  std::size_t warning_threshold = 10'000;
};

/// Fully synchronized FIFO of events and internal actions.
class EventQueue {
 public:
  struct Entry {
    Event event;
    Action action;  // set for internal (posted) events
  };

  explicit EventQueue(QueueOptions options = {});

  EventQueue(const EventQueue&) = delete;
  EventQueue& operator=(const EventQueue&) = delete;

  EventSeq push(Event event);
  EventSeq push_action(Action action);

  /// Blocks until an entry is available. Returns nullopt once the queue is closed,
  /// even if entries are still pending.
  std::optional<Entry> take();
  std::optional<Entry> try_take();

  void close();
  bool closed() const;
  std::size_t size() const;

  void set_coalescer(CoalescePredicate predicate);

 private:
  EventSeq push_entry(Entry entry);

  mutable std::mutex m_mutex;
  std::condition_variable m_ready;
  std::deque<Entry> m_pending;
  EventSeq m_next_seq = 1;
  bool m_closed = false;
  bool m_warned = false;
  QueueOptions m_options;
  CoalescePredicate m_coalescer;
};

struct LoopOptions {
  QueueOptions queue;
  ErrorHook error_hook;  // defaults to logging at error level
};

/// The single-threaded dispatcher. Exactly one thread calls run(); every listener and
/// posted action executes there, one at a time, in enqueue order.
class EventLoop {
 public:
  explicit EventLoop(LoopOptions options = {});
  ~EventLoop();

  EventLoop(const EventLoop&) = delete;
  EventLoop& operator=(const EventLoop&) = delete;

  LoopHandle handle() const;

  EventSeq enqueue(Event event);
  EventSeq post(Action action);

  /// Single-listener idiom: a second registration for the same (source, kind) replaces the first.
  void set_listener(const std::string& source, const std::string& kind, Listener listener);
  void clear_listener(const std::string& source, const std::string& kind);

  void set_error_hook(ErrorHook hook);
  void set_coalescer(CoalescePredicate predicate);

  /// Runs until shutdown(). Throws std::logic_error if called a second time.
  void run();

  /// Callable from any thread. The loop returns after the handler in progress, if any.
  void shutdown();

  bool is_loop_thread() const;
  bool running() const noexcept { return m_running.load(); }
  std::uint64_t dispatched() const noexcept { return m_dispatched.load(); }
  std::size_t pending() const;

 private:
  class State;

  void dispatch(EventQueue::Entry& entry);
  void report(EventSeq seq, const std::string& what);

  std::shared_ptr<State> m_state;
  mutable std::mutex m_listener_mutex;
  std::map<std::pair<std::string, std::string>, Listener> m_listeners;
  std::mutex m_hook_mutex;
  ErrorHook m_error_hook;
  std::atomic<bool> m_started{false};
  std::atomic<bool> m_running{false};
  std::atomic<std::uint64_t> m_dispatched{0};
};

/// Owns an EventLoop running on its own thread. Destruction shuts the loop down and joins.
class LoopThread {
 public:
  explicit LoopThread(LoopOptions options = {});
  ~LoopThread();

  LoopThread(const LoopThread&) = delete;
  LoopThread& operator=(const LoopThread&) = delete;

  EventLoop& loop() noexcept { return m_loop; }
  LoopHandle handle() const { return m_loop.handle(); }
  std::thread::id thread_id() const noexcept { return m_thread.get_id(); }

  /// Runs `fn` on the loop thread and waits for its result, rethrowing its exception.
  /// Runs inline when already on the loop thread.
  template <typename F>
  auto invoke(F&& fn) -> std::invoke_result_t<F&> {
    using R = std::invoke_result_t<F&>;
    if (m_loop.is_loop_thread()) return fn();
    auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(fn));
    auto result = task->get_future();
    m_loop.post([task] { (*task)(); });
    return result.get();
  }

  /// Waits until everything enqueued before this call has been dispatched.
  void drain() {
    invoke([] {});
  }

  void stop();

 private:
  EventLoop m_loop;
  std::thread m_thread;
};

}  // namespace reactorkit
