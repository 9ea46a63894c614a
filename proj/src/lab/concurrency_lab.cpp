#include "reactorkit/lab/concurrency_lab.hpp"

#include <latch>
#include <stdexcept>
#include <system_error>
#include <thread>

namespace reactorkit::lab {

void SharedCounter::delay() const {
  if (m_delay_hook) {
    m_delay_hook();
  } else {
    std::this_thread::yield();
  }
}

void SharedCounter::increment_unsafe() {
  const int local = m_shared.load(std::memory_order_relaxed);
  delay();
  m_shared.store(local + 1, std::memory_order_relaxed);
}

void SharedCounter::increment_safe() {
  std::lock_guard guard{m_lock};
  const int local = m_shared.load(std::memory_order_relaxed);
  delay();
  m_shared.store(local + 1, std::memory_order_relaxed);
}

void run_concurrently(const std::function<void()>& action, int thread_count) {
  if (thread_count < 1) throw std::invalid_argument("thread_count must be at least 1");
  std::latch start{thread_count};
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(thread_count));
  for (int i = 0; i < thread_count; ++i) {
    threads.emplace_back([&] {
      start.arrive_and_wait();
      action();
    });
  }
  bool failed = false;
  for (auto& t : threads) {
    try {
      t.join();
    } catch (const std::system_error&) {
      failed = true;
    }
  }
  if (failed) throw std::runtime_error("interrupted during join");
}

StepProgram StepProgram::increments(int thread, int increments) {
  StepProgram program;
  const auto suffix = std::to_string(thread);
  for (int i = 0; i < increments; ++i) {
    program.steps.push_back({StepKind::fetch, "f" + suffix});
    program.steps.push_back({StepKind::set, "s" + suffix});
  }
  return program;
}

void StepProgram::validate() const {
  bool fetched = false;
  for (const auto& step : steps) {
    if (step.kind == StepKind::fetch) {
      fetched = true;
    } else {
      if (!fetched) throw std::invalid_argument("set step '" + step.label + "' has no preceding fetch");
      fetched = false;
    }
  }
}

std::string InterleavingResult::to_string() const {
  std::string out;
  for (const auto& label : schedule) {
    if (!out.empty()) out += ' ';
    out += label;
  }
  out += ": delta " + std::to_string(final_delta);
  return out;
}

namespace {

struct Enumerator {
  const StepProgram& a;
  const StepProgram& b;
  std::vector<InterleavingResult>& out;
  std::vector<std::string> schedule{};

  // shared value and each thread's register are passed by value: they are the whole state.
  void walk(std::size_t ia, std::size_t ib, int shared, int reg_a, int reg_b) {
    if (ia == a.steps.size() && ib == b.steps.size()) {
      out.push_back({schedule, shared});
      return;
    }
    if (ia < a.steps.size()) {
      const Step& step = a.steps[ia];
      schedule.push_back(step.label);
      if (step.kind == StepKind::fetch) {
        walk(ia + 1, ib, shared, shared, reg_b);
      } else {
        walk(ia + 1, ib, reg_a + 1, reg_a, reg_b);
      }
      schedule.pop_back();
    }
    if (ib < b.steps.size()) {
      const Step& step = b.steps[ib];
      schedule.push_back(step.label);
      if (step.kind == StepKind::fetch) {
        walk(ia, ib + 1, shared, reg_a, shared);
      } else {
        walk(ia, ib + 1, reg_b + 1, reg_a, reg_b);
      }
      schedule.pop_back();
    }
  }
};

}  // namespace

std::vector<InterleavingResult> enumerate_interleavings(const StepProgram& a, const StepProgram& b) {
  a.validate();
  b.validate();
  if (a.steps.size() + b.steps.size() > max_enumerated_steps) {
    throw std::invalid_argument("combined program length exceeds " +
                                std::to_string(max_enumerated_steps) + " steps");
  }
  std::vector<InterleavingResult> results;
  Enumerator{a, b, results}.walk(0, 0, 0, 0, 0);
  return results;
}

std::map<int, int> race_histogram(int thread_count, int trials, bool safe) {
  if (trials < 0) throw std::invalid_argument("trials must be non-negative");
  std::map<int, int> histogram;
  SharedCounter counter;
  for (int trial = 0; trial < trials; ++trial) {
    counter.reset();
    if (safe) {
      run_concurrently([&] { counter.increment_safe(); }, thread_count);
    } else {
      run_concurrently([&] { counter.increment_unsafe(); }, thread_count);
    }
    ++histogram[counter.value()];
  }
  return histogram;
}

}  // namespace reactorkit::lab
