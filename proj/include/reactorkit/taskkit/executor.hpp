#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace reactorkit::taskkit {

class ExecutorShutDown : public std::runtime_error {
 public:
  ExecutorShutDown() : std::runtime_error("executor has been shut down") {}
};

/// A unit of background work. `abandon` runs instead of `run` when the executor shuts
/// down before the job was picked up.
struct Job {
  std::function<void()> run;
  std::function<void()> abandon;
};

enum class ExecutorKind { serial, pool };

/// Worker threads draining a shared FIFO. Serial is a pool of one.
class Executor {
 public:
  Executor(ExecutorKind kind, std::size_t workers);
  ~Executor();

  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  void submit(Job job);

  /// Stops accepting work, abandons everything still queued, and joins the workers after
  /// their current job returns.
  void shutdown();

  ExecutorKind kind() const noexcept { return m_kind; }
  std::size_t size() const noexcept { return m_workers.size(); }

  bool accepting() const;
  std::size_t active() const;
  std::size_t queued() const;
  /// Largest number of jobs observed running at the same time.
  std::size_t active_high_water() const;
  bool idle() const;

 private:
  void work();

  ExecutorKind m_kind;
  mutable std::mutex m_mutex;
  std::condition_variable m_ready;
  std::deque<Job> m_queue;
  std::size_t m_active = 0;
  std::size_t m_high_water = 0;
  bool m_shutdown = false;
  std::vector<std::thread> m_workers;
};

std::shared_ptr<Executor> make_serial_executor();

/// Two workers is the default pool size for an interactive app.
std::shared_ptr<Executor> make_pool_executor(std::size_t size = 2);

}  // namespace reactorkit::taskkit
