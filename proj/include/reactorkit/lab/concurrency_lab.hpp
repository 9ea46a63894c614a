#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace reactorkit::lab {

/// The shared integer from the lost-update demonstration.
///
/// `shared` is an atomic so that each individual fetch and set is a well-defined
/// operation; the unsafe increment still performs them as two separate steps, which is
/// exactly where updates get lost.
class SharedCounter {
 public:
  explicit SharedCounter(int initial = 0) : m_shared(initial) {}

  /// fetch, delay hook, set(local + 1). No lock.
  void increment_unsafe();
  /// Same steps, all under the lock.
  void increment_safe();

  int value() const noexcept { return m_shared.load(std::memory_order_relaxed); }
  void reset(int value = 0) noexcept { m_shared.store(value, std::memory_order_relaxed); }

  /// Runs between fetch and set. Defaults to std::this_thread::yield().
  void set_delay_hook(std::function<void()> hook) { m_delay_hook = std::move(hook); }

 private:
  void delay() const;

  std::atomic<int> m_shared;
  std::mutex m_lock;
  std::function<void()> m_delay_hook;
};

/// Starts `thread_count` threads that each run `action` once, released together, and joins
/// them all. Throws std::invalid_argument for thread_count < 1 and std::runtime_error
/// ("interrupted during join") if a join fails.
void run_concurrently(const std::function<void()>& action, int thread_count);

enum class StepKind { fetch, set };

struct Step {
  StepKind kind;
  std::string label;
};

/// The straight-line program one thread executes. Each set must be preceded by a fetch
/// since the thread's previous set.
struct StepProgram {
  std::vector<Step> steps;

  /// `increments` fetch/set pairs labelled f<thread>/s<thread>.
  static StepProgram increments(int thread, int increments = 1);

  /// Throws std::invalid_argument on a set without a preceding fetch.
  void validate() const;
};

struct InterleavingResult {
  std::vector<std::string> schedule;
  int final_delta = 0;

  std::string to_string() const;
};

/// Maximum combined step count accepted by enumerate_interleavings.
inline constexpr std::size_t max_enumerated_steps = 16;

/// Every order-preserving merge of the two programs, simulated symbolically against a
/// shared value starting at 0. Schedules come out in lexicographic order with program A's
/// step preferred first.
std::vector<InterleavingResult> enumerate_interleavings(const StepProgram& a, const StepProgram& b);

/// Outcome counts of `trials` runs of `thread_count` concurrent increments, keyed by delta.
std::map<int, int> race_histogram(int thread_count, int trials, bool safe);

}  // namespace reactorkit::lab
