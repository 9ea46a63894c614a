#include "reactorkit/event_loop.hpp"

#include <sstream>
#include <stdexcept>

#include "reactorkit/log.hpp"

namespace reactorkit {

namespace {

std::string describe_thread(std::thread::id id) {
  std::ostringstream out;
  out << id;
  return out.str();
}

}  // namespace

ConfinementViolation::ConfinementViolation(std::thread::id offender)
    : std::logic_error("loop-confined state accessed from thread " + describe_thread(offender)),
      m_offender(offender) {}

EventSeq LoopHandle::post(Action action) const {
  if (!m_context) throw EnqueueOnClosed{};
  return m_context->post(std::move(action));
}

bool LoopHandle::is_loop_thread() const {
  return m_context && m_context->loop_thread() == std::this_thread::get_id();
}

std::thread::id LoopHandle::loop_thread() const {
  return m_context ? m_context->loop_thread() : std::thread::id{};
}

void LoopHandle::assert_on_loop() const {
  if (!is_loop_thread()) throw ConfinementViolation{std::this_thread::get_id()};
}

// -- EventQueue ------------------------------------------------------------

EventQueue::EventQueue(QueueOptions options) : m_options(options) {}

EventSeq EventQueue::push(Event event) { return push_entry(Entry{std::move(event), {}}); }

EventSeq EventQueue::push_action(Action action) {
  Event internal;
  internal.source = "loop";
  internal.kind = "action";
  return push_entry(Entry{std::move(internal), std::move(action)});
}

EventSeq EventQueue::push_entry(Entry entry) {
  bool warn = false;
  EventSeq seq = 0;
  {
    std::lock_guard lock{m_mutex};
    if (m_closed) throw EnqueueOnClosed{};
    if (m_coalescer && !entry.action && !m_pending.empty()) {
      Entry& tail = m_pending.back();
      if (!tail.action && tail.event.source == entry.event.source &&
          m_coalescer(tail.event, entry.event)) {
        tail.event.payload = std::move(entry.event.payload);
        return tail.event.seq;
      }
    }
    seq = m_next_seq++;
    entry.event.seq = seq;
    m_pending.push_back(std::move(entry));
    if (!m_warned && m_pending.size() > m_options.warning_threshold) {
      m_warned = true;
      warn = true;
    }
  }
  m_ready.notify_one();
  if (warn) {
    log(LogLevel::warn, "event queue exceeded " + std::to_string(m_options.warning_threshold) +
                            " pending entries");
  }
  return seq;
}

std::optional<EventQueue::Entry> EventQueue::take() {
  std::unique_lock lock{m_mutex};
  m_ready.wait(lock, [this] { return m_closed || !m_pending.empty(); });
  if (m_closed) return std::nullopt;
  Entry entry = std::move(m_pending.front());
  m_pending.pop_front();
  return entry;
}

std::optional<EventQueue::Entry> EventQueue::try_take() {
  std::lock_guard lock{m_mutex};
  if (m_closed || m_pending.empty()) return std::nullopt;
  Entry entry = std::move(m_pending.front());
  m_pending.pop_front();
  return entry;
}

void EventQueue::close() {
  {
    std::lock_guard lock{m_mutex};
    m_closed = true;
  }
  m_ready.notify_all();
}

bool EventQueue::closed() const {
  std::lock_guard lock{m_mutex};
  return m_closed;
}

std::size_t EventQueue::size() const {
  std::lock_guard lock{m_mutex};
  return m_pending.size();
}

void EventQueue::set_coalescer(CoalescePredicate predicate) {
  std::lock_guard lock{m_mutex};
  m_coalescer = std::move(predicate);
}

// -- EventLoop -------------------------------------------------------------

class EventLoop::State : public detail::LoopContext {
 public:
  explicit State(QueueOptions options) : queue(options) {}

  EventSeq post(Action action) override { return queue.push_action(std::move(action)); }
  std::thread::id loop_thread() const override { return thread.load(); }

  EventQueue queue;
  std::atomic<std::thread::id> thread{};
};

EventLoop::EventLoop(LoopOptions options)
    : m_state(std::make_shared<State>(options.queue)), m_error_hook(std::move(options.error_hook)) {}

EventLoop::~EventLoop() { m_state->queue.close(); }

LoopHandle EventLoop::handle() const { return LoopHandle{m_state}; }

EventSeq EventLoop::enqueue(Event event) { return m_state->queue.push(std::move(event)); }

EventSeq EventLoop::post(Action action) { return m_state->queue.push_action(std::move(action)); }

void EventLoop::set_listener(const std::string& source, const std::string& kind, Listener listener) {
  std::lock_guard lock{m_listener_mutex};
  m_listeners[{source, kind}] = std::move(listener);
}

void EventLoop::clear_listener(const std::string& source, const std::string& kind) {
  std::lock_guard lock{m_listener_mutex};
  m_listeners.erase({source, kind});
}

void EventLoop::set_error_hook(ErrorHook hook) {
  std::lock_guard lock{m_hook_mutex};
  m_error_hook = std::move(hook);
}

void EventLoop::set_coalescer(CoalescePredicate predicate) {
  m_state->queue.set_coalescer(std::move(predicate));
}

void EventLoop::run() {
  if (m_started.exchange(true)) throw std::logic_error("EventLoop::run called more than once");
  m_state->thread.store(std::this_thread::get_id());
  m_running.store(true);
  while (auto entry = m_state->queue.take()) {
    dispatch(*entry);
    m_dispatched.fetch_add(1);
  }
  m_running.store(false);
}

void EventLoop::dispatch(EventQueue::Entry& entry) {
  try {
    if (entry.action) {
      entry.action();
      return;
    }
    Listener listener;
    {
      std::lock_guard lock{m_listener_mutex};
      auto found = m_listeners.find({entry.event.source, entry.event.kind});
      if (found != m_listeners.end()) listener = found->second;
    }
    if (!listener) {
      report(entry.event.seq,
             "no listener for " + entry.event.source + "/" + entry.event.kind);
      return;
    }
    listener(entry.event);
  } catch (const std::exception& e) {
    report(entry.event.seq, e.what());
  } catch (...) {
    report(entry.event.seq, "unknown exception");
  }
}

void EventLoop::report(EventSeq seq, const std::string& what) {
  ErrorHook hook;
  {
    std::lock_guard lock{m_hook_mutex};
    hook = m_error_hook;
  }
  if (hook) {
    hook(seq, what);
  } else {
    log(LogLevel::error, "handler for event " + std::to_string(seq) + " failed: " + what);
  }
}

void EventLoop::shutdown() { m_state->queue.close(); }

bool EventLoop::is_loop_thread() const {
  return m_state->loop_thread() == std::this_thread::get_id();
}

std::size_t EventLoop::pending() const { return m_state->queue.size(); }

// -- LoopThread ------------------------------------------------------------

LoopThread::LoopThread(LoopOptions options) : m_loop(std::move(options)) {
  std::promise<void> started;
  auto ready = started.get_future();
  m_thread = std::thread([this, &started] {
    m_loop.post([&started] { started.set_value(); });
    m_loop.run();
  });
  ready.wait();
}

LoopThread::~LoopThread() { stop(); }

void LoopThread::stop() {
  m_loop.shutdown();
  if (m_thread.joinable() && m_thread.get_id() != std::this_thread::get_id()) m_thread.join();
}

}  // namespace reactorkit
