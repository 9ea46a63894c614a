#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reactorkit/event_loop.hpp"
#include "reactorkit/prime/prime_check.hpp"
#include "reactorkit/taskkit/async_task.hpp"
#include "reactorkit/taskkit/executor.hpp"
#include "reactorkit/taskkit/task_handle.hpp"

namespace reactorkit::prime {

enum class PrimeRunMode { foreground, chunked, async };

std::string_view to_string(PrimeRunMode mode);
/// Throws invalid_argument for anything but foreground, chunked or async.
PrimeRunMode parse_run_mode(std::string_view text);

enum class SlotStatus { neutral, checking, prime, composite };

std::string_view to_string(SlotStatus status);

struct SlotView {
  std::int64_t n = 0;
  int percent = 0;
  SlotStatus status = SlotStatus::neutral;

  bool operator==(const SlotView&) const = default;
};

struct PrimeViewState {
  std::vector<SlotView> slots;

  bool operator==(const PrimeViewState&) const = default;
};

class NoFreeSlot : public std::runtime_error {
 public:
  NoFreeSlot() : std::runtime_error("all progress slots are busy") {}
};

/// Callbacks that drive one slot: pre marks it checking at 0%, progress forwards the
/// percent, post marks the verdict, cancelled marks it neutral and freezes its progress.
struct SlotBindings {
  std::function<void()> on_pre;
  std::function<void(int)> on_progress;
  std::function<void(bool)> on_post;
  std::function<void()> on_cancelled;
};

/// The AsyncTask form of `bindings`, with is_prime as the background body.
taskkit::AsyncTaskSpec<std::int64_t, int, bool> lifecycle_bindings(SlotBindings bindings);

struct PrimeCheckerConfig {
  std::size_t slots = 4;
  std::size_t chunk_budget = 1000;
};

/// The prime checker app: a row of progress slots, each fed by one check.
///
/// All members are loop-thread only. Background bodies touch nothing but their own
/// PrimeCheck; every slot change happens in a callback on the loop.
class PrimeChecker {
 public:
  using ViewSink = std::function<void(const PrimeViewState&)>;

  PrimeChecker(LoopHandle loop, std::shared_ptr<taskkit::Executor> executor, ViewSink sink,
               PrimeCheckerConfig config = {});
  ~PrimeChecker();

  PrimeChecker(const PrimeChecker&) = delete;
  PrimeChecker& operator=(const PrimeChecker&) = delete;

  /// Starts checking `n` in the first free slot. Foreground runs to completion before
  /// returning. Throws NoFreeSlot when every slot is checking and invalid_argument for n < 0.
  taskkit::TaskHandle check(std::int64_t n, PrimeRunMode mode);

  /// Requests cancellation of every unfinished check. Returns how many were asked.
  std::size_t cancel_all();

  PrimeViewState view() const;
  const PrimeCheckerConfig& config() const noexcept { return m_config; }

 private:
  struct State;

  LoopHandle m_loop;
  std::shared_ptr<taskkit::Executor> m_executor;
  PrimeCheckerConfig m_config;
  std::shared_ptr<State> m_state;
};

}  // namespace reactorkit::prime
