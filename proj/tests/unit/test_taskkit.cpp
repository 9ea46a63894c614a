#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "reactorkit/confined.hpp"
#include "reactorkit/taskkit/async_task.hpp"
#include "reactorkit/testkit/loop_pump.hpp"

using namespace reactorkit;
using namespace reactorkit::taskkit;
using namespace std::chrono_literals;
using reactorkit::testkit::LoopPump;

namespace {

/// Pumps until `done` holds, failing the test after five seconds.
template <typename Pred>
bool pump_until(LoopPump& pump, Pred done) {
  const auto deadline = std::chrono::steady_clock::now() + 5s;
  while (!done()) {
    pump.pump();
    if (done()) break;
    if (std::chrono::steady_clock::now() > deadline) return false;
    std::this_thread::sleep_for(100us);
  }
  return true;
}

void wait_idle(Executor& executor) {
  while (!executor.idle()) std::this_thread::sleep_for(100us);
}

struct Recorder {
  std::vector<std::string> calls;
  int terminals = 0;

  template <typename Params, typename Result>
  AsyncTaskSpec<Params, int, Result> wrap(std::function<Result(const Params&, TaskContext<int>&)> body) {
    AsyncTaskSpec<Params, int, Result> spec;
    spec.on_pre = [this] { calls.push_back("pre"); };
    spec.background = std::move(body);
    spec.on_progress = [this](const int& p) { calls.push_back("progress(" + std::to_string(p) + ")"); };
    spec.on_post = [this](const Result& r) {
      ++terminals;
      calls.push_back("post(" + std::to_string(r) + ")");
    };
    spec.on_cancelled = [this](const std::optional<Result>&) {
      ++terminals;
      calls.push_back("cancelled");
    };
    return spec;
  }
};

}  // namespace

TEST_CASE("trivial body on a serial executor: pre then post(42)") {
  LoopPump pump;
  auto executor = make_serial_executor();
  Recorder rec;
  AsyncTask<int, int, int> task{rec.wrap<int, int>([](const int&, TaskContext<int>&) { return 42; })};
  const auto handle = task.execute_on(*executor, 0, pump.handle());
  CHECK(rec.calls == std::vector<std::string>{"pre"});
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));
  CHECK(rec.calls == std::vector<std::string>{"pre", "post(42)"});
  CHECK(handle.state() == TaskState::done);
}

TEST_CASE("progress 1, 2, 3 arrives in order on the loop thread") {
  LoopPump pump;
  auto executor = make_serial_executor();
  Recorder rec;
  auto spec = rec.wrap<int, int>([](const int&, TaskContext<int>& ctx) {
    for (int i = 1; i <= 3; ++i) ctx.publish_progress(i);
    return 0;
  });
  const auto loop = pump.handle();
  std::vector<bool> on_loop;
  auto inner = spec.on_progress;
  spec.on_progress = [&, inner](const int& p) {
    on_loop.push_back(loop.is_loop_thread());
    inner(p);
  };
  AsyncTask<int, int, int> task{spec};
  task.execute_on(*executor, 0, loop);
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));
  CHECK(rec.calls ==
        std::vector<std::string>{"pre", "progress(1)", "progress(2)", "progress(3)", "post(0)"});
  CHECK(on_loop == std::vector<bool>{true, true, true});
}

TEST_CASE("publish 40, 60, 80, 100 is seen as 40, 60, 80, 100") {
  LoopPump pump;
  auto executor = make_pool_executor();
  std::vector<int> seen;
  AsyncTaskSpec<int, int, bool> spec;
  spec.background = [](const int&, TaskContext<int>& ctx) {
    for (int p : {40, 60, 80, 100}) ctx.publish_progress(p);
    return true;
  };
  spec.on_progress = [&](const int& p) { seen.push_back(p); };
  bool posted = false;
  spec.on_post = [&](const bool&) { posted = true; };
  AsyncTask<int, int, bool> task{spec};
  task.execute_on(*executor, 11, pump.handle());
  REQUIRE(pump_until(pump, [&] { return posted; }));
  CHECK(seen == std::vector<int>{40, 60, 80, 100});
}

TEST_CASE("no publications means on_progress never runs") {
  LoopPump pump;
  auto executor = make_serial_executor();
  Recorder rec;
  AsyncTask<int, int, int> task{rec.wrap<int, int>([](const int& x, TaskContext<int>&) { return x * 2; })};
  task.execute_on(*executor, 21, pump.handle());
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));
  CHECK(rec.calls == std::vector<std::string>{"pre", "post(42)"});
}

TEST_CASE("serial executor starts the second body only after the first returns") {
  LoopPump pump;
  auto executor = make_serial_executor();
  using Clock = std::chrono::steady_clock;
  Clock::time_point first_end;
  Clock::time_point second_start;
  int finished = 0;
  auto make = [&](bool first) {
    AsyncTaskSpec<int, int, int> spec;
    spec.background = [&, first](const int&, TaskContext<int>&) {
      if (!first) second_start = Clock::now();
      std::this_thread::sleep_for(50ms);
      if (first) first_end = Clock::now();
      return 0;
    };
    spec.on_post = [&](const int&) { ++finished; };
    return AsyncTask<int, int, int>{spec};
  };
  auto a = make(true);
  auto b = make(false);
  a.execute_on(*executor, 0, pump.handle());
  b.execute_on(*executor, 0, pump.handle());
  REQUIRE(pump_until(pump, [&] { return finished == 2; }));
  CHECK(second_start >= first_end);
  CHECK(executor->active_high_water() == 1);
}

TEST_CASE("execute_on errors") {
  LoopPump pump;
  auto executor = make_serial_executor();
  Recorder rec;
  AsyncTask<int, int, int> task{rec.wrap<int, int>([](const int&, TaskContext<int>&) { return 1; })};
  task.execute_on(*executor, 0, pump.handle());
  CHECK_THROWS_AS(task.execute_on(*executor, 0, pump.handle()), AlreadyExecuted);
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));

  executor->shutdown();
  AsyncTask<int, int, int> late{rec.wrap<int, int>([](const int&, TaskContext<int>&) { return 1; })};
  CHECK_THROWS_AS(late.execute_on(*executor, 0, pump.handle()), ExecutorShutDown);

  std::promise<void> off_loop;
  std::thread other{[&] {
    AsyncTask<int, int, int> stray{rec.wrap<int, int>([](const int&, TaskContext<int>&) { return 1; })};
    auto pool = make_pool_executor();
    CHECK_THROWS_AS(stray.execute_on(*pool, 0, pump.handle()), ConfinementViolation);
    off_loop.set_value();
  }};
  off_loop.get_future().get();
  other.join();
}

TEST_CASE("cancel before execution: body never runs, on_cancelled does") {
  LoopPump pump;
  auto executor = make_serial_executor();
  Recorder rec;
  std::atomic<bool> ran{false};
  AsyncTask<int, int, int> task{rec.wrap<int, int>([&](const int&, TaskContext<int>&) {
    ran = true;
    return 1;
  })};
  CHECK(task.handle().cancel());
  task.execute_on(*executor, 0, pump.handle());
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));
  wait_idle(*executor);
  pump.pump();
  CHECK_FALSE(ran);
  CHECK(rec.calls == std::vector<std::string>{"pre", "cancelled"});
  CHECK(task.handle().state() == TaskState::cancelled);
}

TEST_CASE("cancel while queued behind another task skips the body") {
  LoopPump pump;
  auto executor = make_serial_executor();
  std::promise<void> gate;
  auto gate_future = gate.get_future().share();
  int terminals = 0;
  AsyncTaskSpec<int, int, int> blocker;
  blocker.background = [gate_future](const int&, TaskContext<int>&) {
    gate_future.wait();
    return 0;
  };
  blocker.on_post = [&](const int&) { ++terminals; };
  Recorder rec;
  std::atomic<bool> ran{false};
  AsyncTask<int, int, int> first{blocker};
  AsyncTask<int, int, int> second{rec.wrap<int, int>([&](const int&, TaskContext<int>&) {
    ran = true;
    return 1;
  })};
  first.execute_on(*executor, 0, pump.handle());
  const auto handle = second.execute_on(*executor, 0, pump.handle());
  CHECK(handle.cancel());
  CHECK(handle.state() == TaskState::cancelled);
  gate.set_value();
  REQUIRE(pump_until(pump, [&] { return terminals == 1 && rec.terminals == 1; }));
  wait_idle(*executor);
  pump.pump();
  CHECK_FALSE(ran);
  CHECK(rec.calls == std::vector<std::string>{"pre", "cancelled"});
}

TEST_CASE("cancel during a polling body: early return, on_cancelled only") {
  LoopPump pump;
  auto executor = make_pool_executor();
  Recorder rec;
  std::promise<void> started;
  std::atomic<long> polls{0};
  AsyncTask<int, int, int> task{rec.wrap<int, int>([&](const int&, TaskContext<int>& ctx) {
    started.set_value();
    while (!ctx.is_cancelled()) {
      ++polls;
      std::this_thread::yield();
    }
    return -1;
  })};
  const auto handle = task.execute_on(*executor, 0, pump.handle());
  started.get_future().get();
  CHECK(handle.state() == TaskState::running);
  CHECK(handle.cancel());
  CHECK(handle.is_cancelled());
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));
  CHECK(rec.calls == std::vector<std::string>{"pre", "cancelled"});
  CHECK(handle.state() == TaskState::cancelled);
}

TEST_CASE("cancel after done returns false and adds no callback") {
  LoopPump pump;
  auto executor = make_serial_executor();
  Recorder rec;
  AsyncTask<int, int, int> task{rec.wrap<int, int>([](const int&, TaskContext<int>&) { return 5; })};
  const auto handle = task.execute_on(*executor, 0, pump.handle());
  REQUIRE(pump_until(pump, [&] { return rec.terminals == 1; }));
  CHECK_FALSE(handle.cancel());
  CHECK_FALSE(handle.cancel(true));
  pump.pump();
  CHECK(rec.terminals == 1);
  CHECK(handle.state() == TaskState::done);
}

TEST_CASE("is_cancelled: false before cancel, true after, and never clears") {
  LoopPump pump;
  auto executor = make_serial_executor();
  std::promise<bool> before;
  std::promise<bool> after;
  std::promise<void> cancelled;
  auto cancelled_future = cancelled.get_future().share();
  AsyncTaskSpec<int, int, int> spec;
  spec.background = [&](const int&, TaskContext<int>& ctx) {
    before.set_value(ctx.is_cancelled());
    cancelled_future.wait();
    after.set_value(ctx.is_cancelled());
    return 0;
  };
  bool terminal = false;
  spec.on_cancelled = [&](const std::optional<int>& r) {
    terminal = true;
    CHECK(r == 0);
  };
  AsyncTask<int, int, int> task{spec};
  const auto handle = task.execute_on(*executor, 0, pump.handle());
  CHECK_FALSE(before.get_future().get());
  handle.cancel();
  cancelled.set_value();
  CHECK(after.get_future().get());
  REQUIRE(pump_until(pump, [&] { return terminal; }));
  CHECK(handle.is_cancelled());
  handle.cancel();
  CHECK(handle.is_cancelled());
}

TEST_CASE("two pool workers each see only their own cancel flag") {
  LoopPump pump;
  auto executor = make_pool_executor(2);
  std::atomic<int> running{0};
  std::atomic<bool> release{false};
  std::promise<bool> seen_a;
  std::promise<bool> seen_b;
  auto make = [&](std::promise<bool>& seen) {
    AsyncTaskSpec<int, int, int> spec;
    spec.background = [&](const int&, TaskContext<int>& ctx) {
      ++running;
      while (!release) std::this_thread::yield();
      seen.set_value(ctx.is_cancelled());
      return 0;
    };
    return AsyncTask<int, int, int>{spec};
  };
  auto a = make(seen_a);
  auto b = make(seen_b);
  const auto ha = a.execute_on(*executor, 0, pump.handle());
  b.execute_on(*executor, 0, pump.handle());
  while (running < 2) std::this_thread::yield();
  ha.cancel();
  release = true;
  CHECK(seen_a.get_future().get());
  CHECK_FALSE(seen_b.get_future().get());
  wait_idle(*executor);
  pump.pump();
}

TEST_CASE("publications after cancel are dropped") {
  LoopPump pump;
  auto executor = make_serial_executor();
  std::promise<void> first_published;
  std::promise<void> cancelled;
  auto cancelled_future = cancelled.get_future().share();
  std::vector<int> seen;
  bool terminal = false;
  AsyncTaskSpec<int, int, int> spec;
  spec.background = [&](const int&, TaskContext<int>& ctx) {
    ctx.publish_progress(1);
    first_published.set_value();
    cancelled_future.wait();
    ctx.publish_progress(2);
    ctx.publish_progress(3);
    return 0;
  };
  spec.on_progress = [&](const int& p) { seen.push_back(p); };
  spec.on_cancelled = [&](const std::optional<int>&) { terminal = true; };
  AsyncTask<int, int, int> task{spec};
  const auto handle = task.execute_on(*executor, 0, pump.handle());
  first_published.get_future().get();
  pump.pump();
  CHECK(seen == std::vector<int>{1});
  handle.cancel();
  cancelled.set_value();
  REQUIRE(pump_until(pump, [&] { return terminal; }));
  CHECK(seen == std::vector<int>{1});
}

TEST_CASE("coalesced progress delivers the latest value only once per drain") {
  LoopPump pump;
  auto executor = make_serial_executor();
  std::vector<int> seen;
  bool posted = false;
  AsyncTaskSpec<int, int, int> spec;
  spec.coalesce_progress = true;
  spec.background = [](const int&, TaskContext<int>& ctx) {
    for (int i = 1; i <= 100; ++i) ctx.publish_progress(i);
    return 0;
  };
  spec.on_progress = [&](const int& p) { seen.push_back(p); };
  spec.on_post = [&](const int&) { posted = true; };
  AsyncTask<int, int, int> task{spec};
  task.execute_on(*executor, 0, pump.handle());
  wait_idle(*executor);
  REQUIRE(pump_until(pump, [&] { return posted; }));
  REQUIRE_FALSE(seen.empty());
  CHECK(seen.back() == 100);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(seen.size() < 100);
}

TEST_CASE("callbacks run on the loop thread, the body never does") {
  LoopPump pump;
  auto executor = make_pool_executor();
  ConfinedCell<int> cell{pump.handle(), 0};
  std::atomic<bool> body_violation{false};
  bool posted = false;
  AsyncTaskSpec<int, int, int> spec;
  spec.on_pre = [&] { cell.set(cell.get() + 1); };
  spec.background = [&](const int&, TaskContext<int>& ctx) {
    try {
      cell.get();
    } catch (const ConfinementViolation&) {
      body_violation = true;
    }
    ctx.publish_progress(1);
    return 0;
  };
  spec.on_progress = [&](const int&) { cell.set(cell.get() + 10); };
  spec.on_post = [&](const int&) {
    cell.set(cell.get() + 100);
    posted = true;
  };
  AsyncTask<int, int, int> task{spec};
  task.execute_on(*executor, 0, pump.handle());
  REQUIRE(pump_until(pump, [&] { return posted; }));
  CHECK(body_violation);
  CHECK(cell.get() == 111);
}

TEST_CASE("a throwing body ends in on_cancelled(nullopt) and reaches the loop") {
  LoopPump pump;
  auto executor = make_serial_executor();
  std::optional<std::optional<int>> terminal;
  AsyncTaskSpec<int, int, int> spec;
  spec.background = [](const int&, TaskContext<int>&) -> int { throw std::runtime_error("boom"); };
  spec.on_cancelled = [&](const std::optional<int>& r) { terminal = r; };
  AsyncTask<int, int, int> task{spec};
  const auto handle = task.execute_on(*executor, 0, pump.handle());
  wait_idle(*executor);
  CHECK_THROWS_WITH_AS(pump.pump(), "boom", std::runtime_error);
  REQUIRE(terminal.has_value());
  CHECK_FALSE(terminal->has_value());
  CHECK(handle.state() == TaskState::cancelled);
}

TEST_CASE("pool(2) with 8 tasks never runs more than 2 bodies at once") {
  LoopPump pump;
  auto executor = make_pool_executor(2);
  std::atomic<int> now{0};
  std::atomic<int> peak{0};
  int finished = 0;
  std::vector<AsyncTask<int, int, int>> tasks;
  for (int i = 0; i < 8; ++i) {
    AsyncTaskSpec<int, int, int> spec;
    spec.background = [&](const int&, TaskContext<int>&) {
      const int mine = ++now;
      int seen = peak.load();
      while (mine > seen && !peak.compare_exchange_weak(seen, mine)) {
      }
      std::this_thread::sleep_for(10ms);
      --now;
      return 0;
    };
    spec.on_post = [&](const int&) { ++finished; };
    tasks.emplace_back(spec);
  }
  for (auto& t : tasks) t.execute_on(*executor, 0, pump.handle());
  REQUIRE(pump_until(pump, [&] { return finished == 8; }));
  CHECK(peak <= 2);
  CHECK(executor->active_high_water() <= 2);
  CHECK(executor->active_high_water() >= 1);
}

TEST_CASE("shutdown abandons queued tasks into on_cancelled") {
  LoopPump pump;
  auto executor = make_serial_executor();
  std::promise<void> gate;
  auto gate_future = gate.get_future().share();
  std::promise<void> started;
  std::atomic<int> bodies{0};
  std::vector<std::string> terminals;
  std::vector<AsyncTask<int, int, int>> tasks;
  for (int i = 0; i < 3; ++i) {
    AsyncTaskSpec<int, int, int> spec;
    spec.background = [&, i](const int&, TaskContext<int>&) {
      ++bodies;
      if (i == 0) {
        started.set_value();
        gate_future.wait();
      }
      return i;
    };
    spec.on_post = [&, i](const int&) { terminals.push_back("post" + std::to_string(i)); };
    spec.on_cancelled = [&, i](const std::optional<int>&) {
      terminals.push_back("cancelled" + std::to_string(i));
    };
    tasks.emplace_back(spec);
  }
  for (auto& t : tasks) t.execute_on(*executor, 0, pump.handle());
  started.get_future().get();
  std::thread closer{[&] { executor->shutdown(); }};
  std::this_thread::sleep_for(20ms);
  gate.set_value();
  closer.join();
  pump.pump();
  CHECK(bodies == 1);
  std::sort(terminals.begin(), terminals.end());
  CHECK(terminals == std::vector<std::string>{"cancelled1", "cancelled2", "post0"});
}

TEST_CASE("property: exactly one terminal callback across 10000 cancel races") {
  LoopPump pump;
  auto executor = make_pool_executor(2);
  std::mt19937 rng{2024};
  int violations = 0;
  for (int trial = 0; trial < 10'000; ++trial) {
    int posts = 0;
    int cancels = 0;
    const int spin = static_cast<int>(rng() % 200);
    AsyncTaskSpec<int, int, int> spec;
    spec.background = [spin](const int&, TaskContext<int>& ctx) {
      for (int i = 0; i < spin && !ctx.is_cancelled(); ++i) std::this_thread::yield();
      return spin;
    };
    spec.on_post = [&](const int&) { ++posts; };
    spec.on_cancelled = [&](const std::optional<int>&) { ++cancels; };
    AsyncTask<int, int, int> task{spec};
    const auto when = rng() % 4;
    if (when == 0) task.handle().cancel();
    const auto handle = task.execute_on(*executor, 0, pump.handle());
    if (when == 1) handle.cancel();
    if (when == 2) {
      std::this_thread::yield();
      handle.cancel();
    }
    if (!pump_until(pump, [&] { return posts + cancels >= 1; })) {
      ++violations;
      continue;
    }
    if (when == 3) handle.cancel();
    wait_idle(*executor);
    pump.pump();
    if (posts + cancels != 1) ++violations;
    if (cancels == 1 && handle.state() != TaskState::cancelled) ++violations;
    if (posts == 1 && handle.state() != TaskState::done) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("property: delivered progress is a prefix of what was published") {
  LoopPump pump;
  auto executor = make_pool_executor(2);
  std::mt19937 rng{7};
  for (int trial = 0; trial < 300; ++trial) {
    const int count = 1 + static_cast<int>(rng() % 50);
    const int cancel_at = static_cast<int>(rng() % (count + 5));
    std::vector<int> seen;
    bool terminal = false;
    std::promise<void> reached;
    std::promise<void> go;
    auto go_future = go.get_future().share();
    AsyncTaskSpec<int, int, int> spec;
    spec.background = [&, count, cancel_at](const int&, TaskContext<int>& ctx) {
      for (int i = 0; i < count; ++i) {
        if (i == cancel_at) {
          reached.set_value();
          go_future.wait();
        }
        ctx.publish_progress(i);
      }
      if (cancel_at >= count) reached.set_value();
      return 0;
    };
    spec.on_progress = [&](const int& p) { seen.push_back(p); };
    spec.on_post = [&](const int&) { terminal = true; };
    spec.on_cancelled = [&](const std::optional<int>&) { terminal = true; };
    AsyncTask<int, int, int> task{spec};
    const auto handle = task.execute_on(*executor, 0, pump.handle());
    reached.get_future().get();
    if (cancel_at < count) handle.cancel();
    go.set_value();
    REQUIRE(pump_until(pump, [&] { return terminal; }));
    const int expected = std::min(count, cancel_at);
    std::vector<int> prefix;
    for (int i = 0; i < expected; ++i) prefix.push_back(i);
    // Cancel suppresses undelivered values too, so the seen list is a prefix of the published prefix.
    CHECK(seen.size() <= prefix.size());
    CHECK(std::equal(seen.begin(), seen.end(), prefix.begin()));
    if (cancel_at >= count) CHECK(seen == prefix);
  }
}

TEST_CASE("chunked: 10 units with nothing else queued end after 10 dispatches") {
  LoopPump pump;
  int units = 0;
  std::optional<int> result;
  WorkChunker<int> chunker;
  chunker.budget = 5;
  chunker.unit = [&](std::size_t budget) -> std::optional<int> {
    CHECK(budget == 5);
    if (++units == 10) return 99;
    return std::nullopt;
  };
  chunker.on_done = [&](const int& r) { result = r; };
  const auto handle = run_chunked(chunker, pump.handle());
  CHECK(units == 0);
  CHECK(pump.pump() == 10);
  CHECK(units == 10);
  CHECK(result == 99);
  CHECK(handle.state() == TaskState::done);
}

TEST_CASE("chunked: a cancel enqueued after unit 3 stops units 4 and on") {
  LoopPump pump;
  const auto loop = pump.handle();
  int units = 0;
  bool cancelled = false;
  bool done = false;
  TaskHandle handle;
  WorkChunker<int> chunker;
  chunker.unit = [&](std::size_t) -> std::optional<int> {
    if (++units == 3) loop.post([&] { handle.cancel(); });
    if (units == 10) return 1;
    return std::nullopt;
  };
  chunker.on_done = [&](const int&) { done = true; };
  chunker.on_cancelled = [&] { cancelled = true; };
  handle = run_chunked(chunker, loop);
  pump.pump();
  CHECK(units == 3);
  CHECK(cancelled);
  CHECK_FALSE(done);
  CHECK(handle.state() == TaskState::cancelled);
}

TEST_CASE("chunked: a probe posted mid-job runs before the job finishes") {
  LoopPump pump;
  const auto loop = pump.handle();
  int units = 0;
  int probe_at = -1;
  bool done = false;
  WorkChunker<int> chunker;
  chunker.unit = [&](std::size_t) -> std::optional<int> {
    if (++units == 2) loop.post([&] { probe_at = units; });
    if (units == 20) return 0;
    return std::nullopt;
  };
  chunker.on_done = [&](const int&) { done = true; };
  run_chunked(chunker, loop);
  pump.pump();
  CHECK(done);
  // The probe was queued ahead of unit 3's event, so it ran right after unit 2.
  CHECK(probe_at == 2);
}

TEST_CASE("chunked: a throwing unit cancels the job and surfaces the error") {
  LoopPump pump;
  bool cancelled = false;
  WorkChunker<int> chunker;
  chunker.unit = [](std::size_t) -> std::optional<int> { throw std::runtime_error("unit failed"); };
  chunker.on_cancelled = [&] { cancelled = true; };
  const auto handle = run_chunked(chunker, pump.handle());
  CHECK_THROWS_AS(pump.pump(), std::runtime_error);
  CHECK(cancelled);
  CHECK(handle.state() == TaskState::cancelled);
}

TEST_CASE("task state strings") {
  CHECK(to_string(TaskState::pending) == "pending");
  CHECK(to_string(TaskState::running) == "running");
  CHECK(to_string(TaskState::done) == "done");
  CHECK(to_string(TaskState::cancelled) == "cancelled");
}
