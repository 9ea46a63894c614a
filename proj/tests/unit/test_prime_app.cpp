#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "reactorkit/prime/prime_checker.hpp"
#include "reactorkit/testkit/loop_pump.hpp"

using namespace reactorkit;
using namespace reactorkit::prime;
using namespace std::chrono_literals;
using reactorkit::testkit::LoopPump;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<bool> sieve(std::int64_t limit) {
  std::vector<bool> prime(static_cast<std::size_t>(limit + 1), true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::int64_t p = 2; p * p <= limit; ++p) {
    if (!prime[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t m = p * p; m <= limit; m += p) prime[static_cast<std::size_t>(m)] = false;
  }
  return prime;
}

bool trial_division_to_root(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// A checker on its own loop thread, with every emitted view timestamped.
struct LiveChecker {
  LoopThread loop;
  std::shared_ptr<taskkit::Executor> executor = taskkit::make_pool_executor(2);
  std::mutex mutex;
  std::vector<std::pair<Clock::time_point, PrimeViewState>> views;
  std::unique_ptr<PrimeChecker> checker;

  explicit LiveChecker(PrimeCheckerConfig config = {}) {
    checker = std::make_unique<PrimeChecker>(
        loop.handle(), executor,
        [this](const PrimeViewState& v) {
          std::lock_guard lock{mutex};
          views.emplace_back(Clock::now(), v);
        },
        config);
  }

  ~LiveChecker() {
    loop.invoke([this] { checker.reset(); });
    executor->shutdown();
    loop.stop();
  }

  /// First time slot 0 reached `status`, if it did before `deadline`.
  std::optional<Clock::time_point> wait_for(SlotStatus status, std::chrono::milliseconds limit) {
    const auto deadline = Clock::now() + limit;
    while (Clock::now() < deadline) {
      {
        std::lock_guard lock{mutex};
        for (const auto& [when, v] : views) {
          if (v.slots[0].status == status) return when;
        }
      }
      std::this_thread::sleep_for(1ms);
    }
    return std::nullopt;
  }

  /// Highest percent slot 0 has shown so far.
  int percent() {
    std::lock_guard lock{mutex};
    int best = 0;
    for (const auto& e : views) best = std::max(best, e.second.slots[0].percent);
    return best;
  }

  bool ever(SlotStatus status) {
    std::lock_guard lock{mutex};
    return std::any_of(views.begin(), views.end(),
                       [&](const auto& e) { return e.second.slots[0].status == status; });
  }
};

/// Seconds-free cost of checking `n`: the fastest of a few repeated timings.
double time_check_ms(std::int64_t n, int reps) {
  double best = 1e300;
  for (int trial = 0; trial < 3; ++trial) {
    const auto start = Clock::now();
    for (int r = 0; r < reps; ++r) REQUIRE(is_prime(n).outcome == PrimeOutcome::prime);
    const std::chrono::duration<double, std::milli> took = Clock::now() - start;
    best = std::min(best, took.count() / reps);
  }
  return best;
}

PrimeViewState run_to_end(std::int64_t n, PrimeRunMode mode) {
  LoopPump pump;
  auto executor = taskkit::make_pool_executor(2);
  PrimeChecker checker{pump.handle(), executor, {}, PrimeCheckerConfig{1, 997}};
  checker.check(n, mode);
  const auto deadline = Clock::now() + 30s;
  while (checker.view().slots[0].status == SlotStatus::checking && Clock::now() < deadline) {
    pump.pump();
    std::this_thread::sleep_for(100us);
  }
  executor->shutdown();
  pump.pump();
  return checker.view();
}

}  // namespace

TEST_CASE("is_prime small cases") {
  CHECK(is_prime(0).outcome == PrimeOutcome::composite);
  CHECK(is_prime(1).outcome == PrimeOutcome::composite);
  CHECK(is_prime(1).iterations == 0);
  CHECK(is_prime(2).outcome == PrimeOutcome::prime);
  CHECK(is_prime(3).outcome == PrimeOutcome::prime);
  CHECK(is_prime(4).outcome == PrimeOutcome::composite);
  CHECK(is_prime(1013).outcome == PrimeOutcome::prime);
}

TEST_CASE("n = 11 publishes 40, 60, 80, 100") {
  std::vector<int> seen;
  const auto result = is_prime(11, {}, [&](int p) { seen.push_back(p); });
  CHECK(result.outcome == PrimeOutcome::prime);
  CHECK(result.iterations == 4);
  CHECK(seen == std::vector<int>{40, 60, 80, 100});
}

TEST_CASE("property: published percent equals floor(k * 100 / half) at each change") {
  std::mt19937 rng{17};
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = 4 + static_cast<std::int64_t>(rng() % 20000);
    std::vector<int> seen;
    const auto result = is_prime(n, {}, [&](int p) { seen.push_back(p); });
    // Oracle: replay the loop (divisor test, then publish) keeping each distinct floor value.
    const std::int64_t half = n / 2;
    std::vector<int> expected;
    for (std::int64_t k = 2; k <= half; ++k) {
      if (n % k == 0) break;
      const int p = static_cast<int>(k * 100 / half);
      if (expected.empty() || expected.back() != p) expected.push_back(p);
    }
    CHECK(seen == expected);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    if (result.outcome == PrimeOutcome::prime) CHECK(seen.back() == 100);
  }
}

TEST_CASE("property: agrees with a sieve for every n <= 100000") {
  const auto oracle = sieve(100'000);
  std::int64_t disagreements = 0;
  for (std::int64_t n = 0; n <= 100'000; ++n) {
    const bool got = is_prime(n).outcome == PrimeOutcome::prime;
    if (got != oracle[static_cast<std::size_t>(n)]) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("benchmark inputs 1013 through 100000007 are all prime") {
  for (std::int64_t n : {1013LL, 10007LL, 100003LL, 1000003LL, 10000169LL, 100000007LL}) {
    CAPTURE(n);
    REQUIRE(trial_division_to_root(n));
    const auto result = is_prime(n);
    CHECK(result.outcome == PrimeOutcome::prime);
    CHECK(result.iterations == static_cast<std::uint64_t>(n / 2 - 1));
  }
}

TEST_CASE("10000169 takes exactly 5000083 iterations") {
  CHECK(trial_division_to_root(10'000'169));
  const auto result = is_prime(10'000'169);
  CHECK(result.outcome == PrimeOutcome::prime);
  CHECK(result.iterations == 5'000'083);
}

TEST_CASE("step resumes where it left off and honours the probe") {
  PrimeCheck check{1013};
  CHECK(check.half() == 506);
  CHECK_FALSE(check.step(100).has_value());
  CHECK(check.iterations() == 100);
  CHECK(check.step(1000) == PrimeOutcome::prime);
  CHECK(check.iterations() == 505);
  CHECK(check.step(10) == PrimeOutcome::prime);
  CHECK(check.iterations() == 505);

  PrimeCheck cancelled{1013};
  int polls = 0;
  CHECK(cancelled.step(1000, [&] { return ++polls > 50; }) == PrimeOutcome::cancelled);
  CHECK(cancelled.iterations() == 50);
  CHECK(to_string(PrimeOutcome::cancelled) == "cancelled");

  PrimeCheck composite{1015};
  CHECK(composite.step(1000) == PrimeOutcome::composite);
  CHECK(composite.iterations() == 4);
}

TEST_CASE("run modes and slot statuses parse and print") {
  for (auto m : {PrimeRunMode::foreground, PrimeRunMode::chunked, PrimeRunMode::async}) {
    CHECK(parse_run_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_run_mode("sideways"), std::invalid_argument);
  CHECK(to_string(SlotStatus::neutral) == "neutral");
  CHECK(to_string(SlotStatus::checking) == "checking");
  CHECK(to_string(SlotStatus::prime) == "prime");
  CHECK(to_string(SlotStatus::composite) == "composite");
}

TEST_CASE("lifecycle bindings: checking at 0, progress, then the verdict mark") {
  LoopPump pump;
  auto executor = taskkit::make_serial_executor();
  std::vector<std::string> marks;
  SlotBindings b;
  b.on_pre = [&] { marks.push_back("checking"); };
  b.on_progress = [&](int p) { marks.push_back(std::to_string(p)); };
  b.on_post = [&](bool prime) { marks.push_back(prime ? "prime" : "composite"); };
  b.on_cancelled = [&] { marks.push_back("neutral"); };
  taskkit::AsyncTask<std::int64_t, int, bool> task{lifecycle_bindings(b)};
  task.execute_on(*executor, 11, pump.handle());
  while (marks.empty() || marks.back() != "prime") {
    pump.pump();
    std::this_thread::sleep_for(100us);
  }
  CHECK(marks == std::vector<std::string>{"checking", "40", "60", "80", "100", "prime"});

  std::vector<std::string> composite_marks;
  SlotBindings c;
  c.on_post = [&](bool prime) { composite_marks.push_back(prime ? "prime" : "composite"); };
  taskkit::AsyncTask<std::int64_t, int, bool> second{lifecycle_bindings(c)};
  second.execute_on(*executor, 91, pump.handle());
  while (composite_marks.empty()) {
    pump.pump();
    std::this_thread::sleep_for(100us);
  }
  CHECK(composite_marks == std::vector<std::string>{"composite"});
}

TEST_CASE("checker: n = 11 chunked walks the slot through 0, 40, 60, 80, 100, prime") {
  LoopPump pump;
  std::vector<SlotView> seen;
  PrimeChecker checker{pump.handle(), nullptr,
                       [&](const PrimeViewState& v) { seen.push_back(v.slots[0]); },
                       PrimeCheckerConfig{1, 1}};
  checker.check(11, PrimeRunMode::chunked);
  pump.pump();
  CHECK(seen == std::vector<SlotView>{
                    {11, 0, SlotStatus::checking},
                    {11, 40, SlotStatus::checking},
                    {11, 60, SlotStatus::checking},
                    {11, 80, SlotStatus::checking},
                    {11, 100, SlotStatus::checking},
                    {11, 100, SlotStatus::prime},
                });
}

TEST_CASE("property: all three modes agree on verdict and final progress") {
  std::mt19937 rng{23};
  std::vector<std::int64_t> sample{0, 1, 2, 11, 1013, 10007, 9991, 100003};
  for (int i = 0; i < 12; ++i) sample.push_back(static_cast<std::int64_t>(rng() % 200000));
  for (auto n : sample) {
    CAPTURE(n);
    const auto fg = run_to_end(n, PrimeRunMode::foreground);
    const auto ch = run_to_end(n, PrimeRunMode::chunked);
    const auto as = run_to_end(n, PrimeRunMode::async);
    CHECK(fg == ch);
    CHECK(ch == as);
    const auto expected = trial_division_to_root(n) ? SlotStatus::prime : SlotStatus::composite;
    CHECK(fg.slots[0].status == expected);
    if (expected == SlotStatus::prime && n >= 4) CHECK(fg.slots[0].percent == 100);
  }
}

TEST_CASE("checker errors and slot exhaustion") {
  LoopPump pump;
  auto executor = taskkit::make_pool_executor(2);
  PrimeChecker checker{pump.handle(), executor, {}, PrimeCheckerConfig{2, 1000}};
  CHECK_THROWS_AS(checker.check(-1, PrimeRunMode::foreground), std::invalid_argument);
  checker.check(100'000'007, PrimeRunMode::chunked);
  checker.check(100'000'007, PrimeRunMode::async);
  CHECK_THROWS_AS(checker.check(7, PrimeRunMode::foreground), NoFreeSlot);
  CHECK(checker.cancel_all() == 2);
  while (checker.view().slots[1].status == SlotStatus::checking ||
         checker.view().slots[0].status == SlotStatus::checking) {
    pump.pump();
    std::this_thread::sleep_for(100us);
  }
  CHECK(checker.view().slots[0].status == SlotStatus::neutral);
  CHECK(checker.view().slots[1].status == SlotStatus::neutral);
  CHECK(checker.cancel_all() == 0);
  checker.check(7, PrimeRunMode::foreground);
  pump.pump();
  CHECK(checker.view().slots[0] == SlotView{7, 100, SlotStatus::prime});

  PrimeChecker no_pool{pump.handle(), nullptr, {}};
  CHECK_THROWS_AS(no_pool.check(7, PrimeRunMode::async), std::logic_error);
  CHECK_THROWS_AS(PrimeChecker(pump.handle(), nullptr, {}, PrimeCheckerConfig{0, 1}), std::invalid_argument);
  executor->shutdown();
}

TEST_CASE("a reused slot ignores late updates from the check that held it before") {
  LoopPump pump;
  PrimeChecker checker{pump.handle(), nullptr, {}, PrimeCheckerConfig{1, 1000}};
  // Foreground progress is posted, so 1013's percents are still queued when 9 takes the slot.
  checker.check(1013, PrimeRunMode::foreground);
  CHECK(pump.held() > 0);
  checker.check(9, PrimeRunMode::foreground);
  pump.pump();
  CHECK(checker.view().slots[0] == SlotView{9, 50, SlotStatus::composite});
}

TEST_CASE("a cancelled slot stays busy until its cancelled callback runs") {
  LoopPump pump;
  auto executor = taskkit::make_serial_executor();
  PrimeChecker checker{pump.handle(), executor, {}, PrimeCheckerConfig{1, 1000}};
  checker.check(100'000'007, PrimeRunMode::async);
  CHECK(checker.cancel_all() == 1);
  CHECK_THROWS_AS(checker.check(7, PrimeRunMode::foreground), NoFreeSlot);
  while (checker.view().slots[0].status == SlotStatus::checking) {
    pump.pump();
    std::this_thread::sleep_for(100us);
  }
  CHECK(checker.view().slots[0].status == SlotStatus::neutral);
  CHECK(checker.view().slots[0].n == 100'000'007);
  executor->shutdown();
}

TEST_CASE("foreground: a cancel dispatched mid-run is handled only after the verdict") {
  LiveChecker live;
  std::mutex m;
  std::vector<std::string> trace;
  std::atomic<bool> started{false};
  Clock::time_point begin;
  Clock::time_point end;
  live.loop.handle().post([&] {
    begin = Clock::now();
    started = true;
    live.checker->check(100'000'007, PrimeRunMode::foreground);
    end = Clock::now();
    std::lock_guard lock{m};
    trace.push_back(std::string("verdict ") + std::string(to_string(live.checker->view().slots[0].status)));
  });
  while (!started) std::this_thread::yield();
  std::this_thread::sleep_for(30ms);
  const auto cancel_posted = Clock::now();
  live.loop.handle().post([&] {
    const auto asked = live.checker->cancel_all();
    std::lock_guard lock{m};
    trace.push_back("cancel asked=" + std::to_string(asked));
  });
  live.loop.drain();
  CHECK(cancel_posted > begin);
  CHECK(cancel_posted < end);
  std::lock_guard lock{m};
  CHECK(trace == std::vector<std::string>{"verdict prime", "cancel asked=0"});
}

TEST_CASE("async: cancel mid-run of 100000007 takes effect within 200 ms") {
  LiveChecker live;
  live.loop.invoke([&] { live.checker->check(100'000'007, PrimeRunMode::async); });
  std::this_thread::sleep_for(30ms);
  const int before = live.percent();
  CHECK(before >= 1);
  CHECK(before < 100);
  const auto dispatched = Clock::now();
  live.loop.handle().post([&] { live.checker->cancel_all(); });
  const auto neutral = live.wait_for(SlotStatus::neutral, 5s);
  REQUIRE(neutral.has_value());
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(*neutral - dispatched);
  MESSAGE("async cancel latency " << std::chrono::duration<double, std::milli>(*neutral - dispatched).count() << " ms");
  CHECK(latency < 200ms);
  std::this_thread::sleep_for(300ms);
  CHECK_FALSE(live.ever(SlotStatus::prime));
}

TEST_CASE("chunked: a probe runs mid-job and cancel takes effect within 200 ms") {
  LiveChecker live;
  live.loop.invoke([&] { live.checker->check(100'000'007, PrimeRunMode::chunked); });
  std::this_thread::sleep_for(20ms);
  std::atomic<bool> probe_saw_checking{false};
  const auto probe_posted = Clock::now();
  Clock::time_point probe_ran;
  live.loop.invoke([&] {
    probe_ran = Clock::now();
    probe_saw_checking = live.checker->view().slots[0].status == SlotStatus::checking;
  });
  CHECK(probe_saw_checking);
  CHECK(probe_ran - probe_posted < 200ms);

  std::this_thread::sleep_for(20ms);
  const int before = live.percent();
  CHECK(before >= 1);
  CHECK(before < 100);
  const auto dispatched = Clock::now();
  live.loop.handle().post([&] { live.checker->cancel_all(); });
  const auto neutral = live.wait_for(SlotStatus::neutral, 5s);
  REQUIRE(neutral.has_value());
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(*neutral - dispatched);
  MESSAGE("chunked cancel latency " << latency.count() << " ms");
  CHECK(latency < 200ms);
  CHECK_FALSE(live.ever(SlotStatus::prime));
}

TEST_CASE("runtime grows between x5 and x20 per decade") {
  REQUIRE(trial_division_to_root(100'003));
  REQUIRE(trial_division_to_root(1'000'003));
  REQUIRE(trial_division_to_root(10'000'019));
  const double t5 = time_check_ms(100'003, 100);
  const double t6 = time_check_ms(1'000'003, 10);
  const double t7 = time_check_ms(10'000'019, 1);
  MESSAGE("ms per check: " << t5 << " " << t6 << " " << t7);
  CHECK(t6 / t5 >= 5.0);
  CHECK(t6 / t5 <= 20.0);
  CHECK(t7 / t6 >= 5.0);
  CHECK(t7 / t6 <= 20.0);
}
