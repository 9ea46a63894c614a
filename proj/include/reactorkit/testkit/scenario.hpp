#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reactorkit/testkit/harness.hpp"

namespace reactorkit::testkit {

enum class StepKind { click, advance, tick, timeout, expect };

struct Step {
  StepKind kind = StepKind::click;
  std::string target;  // click
  int count = 1;       // click, tick
  std::int64_t ms = 0;  // advance
  std::vector<std::pair<std::string, std::string>> expectations;  // expect
  int line = 0;

  bool operator==(const Step& other) const {
    return kind == other.kind && target == other.target && count == other.count &&
           ms == other.ms && expectations == other.expectations;
  }
};

/// Line-oriented script:
///
///     click <id> [count]
///     advance <ms>
///     tick [count]
///     timeout
///     expect <key>=<value> [<key>=<value> ...]
///
/// Blank lines and lines starting with '#' are skipped.
struct ScenarioScript {
  std::vector<Step> steps;

  bool operator==(const ScenarioScript&) const = default;
};

class ScenarioSyntaxError : public std::invalid_argument {
 public:
  ScenarioSyntaxError(int line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), m_line(line) {}
  int line() const noexcept { return m_line; }

 private:
  int m_line;
};

ScenarioScript parse_scenario(std::string_view text);
ScenarioScript load_scenario(const std::string& path);

std::string to_text(const Step& step);
std::string to_text(const ScenarioScript& script);

struct ScenarioFailure {
  std::size_t step_index = 0;
  int line = 0;
  std::string key;
  std::string expected;
  std::string actual;

  std::string message() const;
};

struct ScenarioResult {
  /// One line per step: the step, then the observation after it.
  std::vector<std::string> trace;
  std::optional<ScenarioFailure> failure;

  bool passed() const noexcept { return !failure.has_value(); }
};

/// Runs steps in order against `harness`, pumping its loop after each one, and stops at
/// the first failed expectation. On a real-time harness, display and time match within one.
ScenarioResult run_scenario(const ScenarioScript& script, Harness& harness);

std::string format_observation(const Observation& observation);

}  // namespace reactorkit::testkit
