#include "reactorkit/gateway/cli.hpp"

#include <chrono>
#include <future>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "reactorkit/gateway/config.hpp"
#include "reactorkit/gateway/runtime.hpp"
#include "reactorkit/gateway/stdio_server.hpp"
#include "reactorkit/gateway/ws_server.hpp"
#include "reactorkit/lab/concurrency_lab.hpp"
#include "reactorkit/prime/prime_checker.hpp"
#include "reactorkit/testkit/scenario.hpp"

namespace reactorkit::gateway {

namespace {

using Clock = std::chrono::steady_clock;

struct ServeArgs {
  std::optional<int> port;
  std::string config;
  std::string web_root;
  std::string address = "0.0.0.0";
  bool stdio = false;
  bool fake_clock = false;
};

struct ScriptArgs {
  std::string script;
  bool real_time = false;
  bool mock = false;
  int min = counter::BoundedCounter::default_min;
  int max = counter::BoundedCounter::default_max;
};

struct PrimeArgs {
  std::string n;
  std::string mode = "async";
  std::optional<int> cancel_after_ms;
  int pool_size = 2;
  int chunk_budget = 1000;
};

struct LabArgs {
  int threads = 2;
  int trials = 1000;
  bool safe = false;
};

int serve(const ServeArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RuntimeConfig config;
  if (!args.config.empty()) config = load_config(args.config);
  config = apply_env(config);
  if (args.port) {
    config.port = *args.port;
    config.validate();
  }

  Runtime runtime{config, RuntimeOptions{args.fake_clock}};
  if (args.stdio) {
    serve_stdio(runtime, in, out, StdioOptions{args.fake_clock});
    return exit_ok;
  }
  WsServer server{runtime, WsServerOptions{args.address, config.port, args.web_root}};
  err << "reactorkit listening on " << args.address << ":" << server.port() << " (ws at /ws)"
      << std::endl;
  server.run(true);
  return exit_ok;
}

int report(const testkit::ScenarioResult& result, std::ostream& out, std::ostream& err) {
  for (const auto& line : result.trace) out << line << "\n";
  if (!result.passed()) {
    err << "assertion failed: " << result.failure->message() << "\n";
    return exit_failed;
  }
  out << "passed\n";
  return exit_ok;
}

int counter_script(const ScriptArgs& args, std::ostream& out, std::ostream& err) {
  const auto script = testkit::load_scenario(args.script);
  testkit::CounterHarness harness{args.min, args.max};
  return report(testkit::run_scenario(script, harness), out, err);
}

bool drives_clock_directly(const testkit::ScenarioScript& script) {
  for (const auto& step : script.steps) {
    if (step.kind == testkit::StepKind::tick || step.kind == testkit::StepKind::timeout) {
      return true;
    }
  }
  return false;
}

int timer_script(const ScriptArgs& args, std::ostream& out, std::ostream& err) {
  const auto script = testkit::load_scenario(args.script);
  const bool mock = args.mock || (!args.real_time && drives_clock_directly(script));
  if (mock && args.real_time) throw CLI::ValidationError("--mock and --real-time are exclusive");
  if (mock) {
    testkit::TimerMockHarness harness;
    return report(testkit::run_scenario(script, harness), out, err);
  }
  testkit::TimerHarness harness{args.real_time ? testkit::TimeSource::real
                                               : testkit::TimeSource::fake};
  return report(testkit::run_scenario(script, harness), out, err);
}

int prime_run(const PrimeArgs& args, std::ostream& out, std::ostream& err) {
  std::int64_t n = 0;
  try {
    n = parse_number("prime", Json(args.n));
  } catch (const ProtocolError&) {
    err << "invalid number: " << args.n << "\n";
    return exit_usage;
  }
  if (n < 0) {
    err << "invalid number: " << args.n << "\n";
    return exit_usage;
  }
  const auto mode = prime::parse_run_mode(args.mode);

  LoopThread loop;
  auto executor = taskkit::make_pool_executor(static_cast<std::size_t>(args.pool_size));
  std::promise<Clock::time_point> finished;
  bool checking = false;
  bool done = false;
  prime::PrimeChecker checker{
      loop.handle(), executor,
      [&](const prime::PrimeViewState& v) {
        const auto status = v.slots.front().status;
        if (status == prime::SlotStatus::checking) {
          checking = true;
        } else if (checking && !done) {
          done = true;
          finished.set_value(Clock::now());
        }
      },
      prime::PrimeCheckerConfig{1, static_cast<std::size_t>(args.chunk_budget)}};

  out << "checking " << n << " mode=" << prime::to_string(mode) << std::endl;
  const auto start = Clock::now();
  auto result = finished.get_future();
  loop.loop().post([&] { checker.check(n, mode); });

  std::optional<Clock::time_point> cancelled_at;
  if (args.cancel_after_ms &&
      result.wait_for(std::chrono::milliseconds(*args.cancel_after_ms)) != std::future_status::ready) {
    cancelled_at = Clock::now();
    loop.loop().post([&] { checker.cancel_all(); });
  }
  const auto end = result.get();
  const auto final_view = loop.invoke([&] { return checker.view(); });
  loop.invoke([&] { checker.cancel_all(); });
  executor->shutdown();
  loop.stop();

  const auto ms = [](Clock::duration d) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  };
  const auto& slot = final_view.slots.front();
  const std::string verdict =
      slot.status == prime::SlotStatus::neutral ? "cancelled" : std::string(to_string(slot.status));
  if (cancelled_at) {
    out << "cancel dispatched at " << ms(*cancelled_at - start) << " ms" << "\n";
  }
  out << "verdict " << verdict << " percent=" << slot.percent << " elapsed_ms=" << ms(end - start);
  if (cancelled_at) {
    const auto lag = end > *cancelled_at ? end - *cancelled_at : Clock::duration::zero();
    out << " after_cancel_ms=" << ms(lag);
  }
  out << "\n";
  return exit_ok;
}

int lab_race(const LabArgs& args, std::ostream& out) {
  const auto histogram = lab::race_histogram(args.threads, args.trials, args.safe);
  out << "threads=" << args.threads << " trials=" << args.trials
      << " increment=" << (args.safe ? "safe" : "unsafe") << "\n";
  for (const auto& [delta, count] : histogram) out << "delta " << delta << ": " << count << "\n";
  return exit_ok;
}

int lab_enumerate(std::ostream& out) {
  const auto results = lab::enumerate_interleavings(lab::StepProgram::increments(1),
                                                    lab::StepProgram::increments(2));
  int both = 0;
  for (const auto& r : results) {
    out << r.to_string() << "\n";
    if (r.final_delta == 2) ++both;
  }
  out << results.size() << " schedules, " << both << " with delta 2\n";
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"reactorkit: event-loop demo apps, scripted scenarios and gateway"};
  app.require_subcommand(1);

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the gateway (WebSocket, or --stdio)");
  serve_cmd->add_option("--port", serve_args.port, "Listen port (0 picks one)");
  serve_cmd->add_option("--config", serve_args.config, "key=value config file")->check(CLI::ExistingFile);
  serve_cmd->add_option("--web-root", serve_args.web_root, "Directory served over HTTP")->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--address", serve_args.address, "Listen address");
  serve_cmd->add_flag("--stdio", serve_args.stdio, "Speak the protocol over stdin/stdout");
  serve_cmd->add_flag("--fake-clock", serve_args.fake_clock,
                      "Virtual timer clock driven by clock/advance messages");

  ScriptArgs counter_args;
  auto* counter_cmd = app.add_subcommand("counter", "Replay a counter scenario script");
  counter_cmd->add_option("--script", counter_args.script, "Scenario file")->required()->check(CLI::ExistingFile);
  counter_cmd->add_option("--min", counter_args.min, "Counter minimum");
  counter_cmd->add_option("--max", counter_args.max, "Counter maximum");

  ScriptArgs timer_args;
  auto* timer_cmd = app.add_subcommand("timer", "Replay a timer scenario script");
  timer_cmd->add_option("--script", timer_args.script, "Scenario file")->required()->check(CLI::ExistingFile);
  timer_cmd->add_flag("--real-time", timer_args.real_time, "Run on the real clock");
  timer_cmd->add_flag("--mock", timer_args.mock,
                      "Drive the state machine against the unified mock (implied by tick/timeout steps)");

  PrimeArgs prime_args;
  auto* prime_cmd = app.add_subcommand("prime", "Check one number for primality");
  prime_cmd->add_option("--n", prime_args.n, "Candidate")->required();
  prime_cmd->add_option("--mode", prime_args.mode, "foreground, chunked or async")
      ->check(CLI::IsMember({"foreground", "chunked", "async"}));
  prime_cmd->add_option("--cancel-after", prime_args.cancel_after_ms, "Cancel after this many ms")
      ->check(CLI::NonNegativeNumber);
  prime_cmd->add_option("--pool-size", prime_args.pool_size, "Async workers")->check(CLI::PositiveNumber);
  prime_cmd->add_option("--chunk-budget", prime_args.chunk_budget, "Iterations per chunk")
      ->check(CLI::PositiveNumber);

  LabArgs lab_args;
  auto* lab_cmd = app.add_subcommand("lab", "Shared-counter race experiments");
  lab_cmd->require_subcommand(1);
  auto* race_cmd = lab_cmd->add_subcommand("race", "Histogram of concurrent increment deltas");
  race_cmd->add_option("--threads", lab_args.threads, "Threads per trial")->check(CLI::PositiveNumber);
  race_cmd->add_option("--trials", lab_args.trials, "Trials")->check(CLI::PositiveNumber);
  race_cmd->add_flag("--safe", lab_args.safe, "Increment under the lock");
  auto* enumerate_cmd = lab_cmd->add_subcommand("enumerate", "All schedules of two increments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return exit_usage;
  }

  try {
    if (serve_cmd->parsed()) return serve(serve_args, in, out, err);
    if (counter_cmd->parsed()) return counter_script(counter_args, out, err);
    if (timer_cmd->parsed()) return timer_script(timer_args, out, err);
    if (prime_cmd->parsed()) return prime_run(prime_args, out, err);
    if (race_cmd->parsed()) return lab_race(lab_args, out);
    if (enumerate_cmd->parsed()) return lab_enumerate(out);
  } catch (const testkit::ScenarioSyntaxError& e) {
    err << "bad script: " << e.what() << "\n";
    return exit_usage;
  } catch (const testkit::UnknownComponent& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const testkit::UnsupportedStep& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const ConfigError& e) {
    err << "bad config: " << e.what() << "\n";
    return exit_usage;
  } catch (const BindFailure& e) {
    err << e.what() << "\n";
    return exit_failed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failed;
  }
  return exit_usage;
}

}  // namespace reactorkit::gateway
