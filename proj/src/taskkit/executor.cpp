#include "reactorkit/taskkit/executor.hpp"

#include <algorithm>

#include "reactorkit/log.hpp"

namespace reactorkit::taskkit {

Executor::Executor(ExecutorKind kind, std::size_t workers) : m_kind(kind) {
  if (workers == 0) throw std::invalid_argument("executor needs at least one worker");
  if (kind == ExecutorKind::serial && workers != 1) {
    throw std::invalid_argument("a serial executor has exactly one worker");
  }
  m_workers.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) m_workers.emplace_back([this] { work(); });
}

Executor::~Executor() { shutdown(); }

void Executor::submit(Job job) {
  {
    std::lock_guard lock{m_mutex};
    if (m_shutdown) throw ExecutorShutDown{};
    m_queue.push_back(std::move(job));
  }
  m_ready.notify_one();
}

void Executor::shutdown() {
  std::deque<Job> abandoned;
  {
    std::lock_guard lock{m_mutex};
    m_shutdown = true;
    abandoned.swap(m_queue);
  }
  m_ready.notify_all();
  for (auto& job : abandoned) {
    if (!job.abandon) continue;
    try {
      job.abandon();
    } catch (const std::exception& e) {
      log(LogLevel::warn, std::string{"abandoning job failed: "} + e.what());
    }
  }
  for (auto& worker : m_workers) {
    if (worker.joinable() && worker.get_id() != std::this_thread::get_id()) worker.join();
  }
}

void Executor::work() {
  for (;;) {
    Job job;
    {
      std::unique_lock lock{m_mutex};
      m_ready.wait(lock, [this] { return m_shutdown || !m_queue.empty(); });
      if (m_queue.empty()) return;
      job = std::move(m_queue.front());
      m_queue.pop_front();
      ++m_active;
      m_high_water = std::max(m_high_water, m_active);
    }
    try {
      if (job.run) job.run();
    } catch (const std::exception& e) {
      log(LogLevel::error, std::string{"background job failed: "} + e.what());
    }
    {
      std::lock_guard lock{m_mutex};
      --m_active;
    }
  }
}

bool Executor::accepting() const {
  std::lock_guard lock{m_mutex};
  return !m_shutdown;
}

std::size_t Executor::active() const {
  std::lock_guard lock{m_mutex};
  return m_active;
}

std::size_t Executor::queued() const {
  std::lock_guard lock{m_mutex};
  return m_queue.size();
}

std::size_t Executor::active_high_water() const {
  std::lock_guard lock{m_mutex};
  return m_high_water;
}

bool Executor::idle() const {
  std::lock_guard lock{m_mutex};
  return m_active == 0 && m_queue.empty();
}

std::shared_ptr<Executor> make_serial_executor() {
  return std::make_shared<Executor>(ExecutorKind::serial, 1);
}

std::shared_ptr<Executor> make_pool_executor(std::size_t size) {
  return std::make_shared<Executor>(ExecutorKind::pool, size);
}

}  // namespace reactorkit::taskkit
