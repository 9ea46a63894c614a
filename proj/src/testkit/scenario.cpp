#include "reactorkit/testkit/scenario.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace reactorkit::testkit {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

template <typename Int>
Int parse_int(const std::string& text, int line, std::string_view what) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ScenarioSyntaxError(line, "bad " + std::string(what) + ": " + text);
  }
  return value;
}

std::string_view keyword(StepKind kind) {
  switch (kind) {
    case StepKind::click: return "click";
    case StepKind::advance: return "advance";
    case StepKind::tick: return "tick";
    case StepKind::timeout: return "timeout";
    case StepKind::expect: return "expect";
  }
  return "?";
}

bool within_one(const std::string& expected, const std::string& actual) {
  int e = 0;
  int a = 0;
  const auto re = std::from_chars(expected.data(), expected.data() + expected.size(), e);
  const auto ra = std::from_chars(actual.data(), actual.data() + actual.size(), a);
  if (re.ec != std::errc{} || ra.ec != std::errc{}) return false;
  return std::abs(e - a) <= 1;
}

}  // namespace

ScenarioScript parse_scenario(std::string_view text) {
  ScenarioScript script;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto words = split_words(raw);
    if (words.empty() || words[0].front() == '#') continue;

    Step step;
    step.line = line;
    const std::string& cmd = words[0];
    if (cmd == "click") {
      if (words.size() < 2 || words.size() > 3) {
        throw ScenarioSyntaxError(line, "usage: click <id> [count]");
      }
      step.kind = StepKind::click;
      step.target = words[1];
      if (words.size() == 3) step.count = parse_int<int>(words[2], line, "count");
    } else if (cmd == "advance") {
      if (words.size() != 2) throw ScenarioSyntaxError(line, "usage: advance <ms>");
      step.kind = StepKind::advance;
      step.ms = parse_int<std::int64_t>(words[1], line, "milliseconds");
      if (step.ms < 0) throw ScenarioSyntaxError(line, "time cannot run backwards");
    } else if (cmd == "tick") {
      if (words.size() > 2) throw ScenarioSyntaxError(line, "usage: tick [count]");
      step.kind = StepKind::tick;
      if (words.size() == 2) step.count = parse_int<int>(words[1], line, "count");
    } else if (cmd == "timeout") {
      if (words.size() != 1) throw ScenarioSyntaxError(line, "usage: timeout");
      step.kind = StepKind::timeout;
    } else if (cmd == "expect") {
      if (words.size() < 2) throw ScenarioSyntaxError(line, "usage: expect <key>=<value>");
      step.kind = StepKind::expect;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string::npos || eq == 0) {
          throw ScenarioSyntaxError(line, "expected <key>=<value>, got " + words[i]);
        }
        step.expectations.emplace_back(words[i].substr(0, eq), words[i].substr(eq + 1));
      }
    } else {
      throw ScenarioSyntaxError(line, "unknown step: " + cmd);
    }
    if (step.count < 1) throw ScenarioSyntaxError(line, "count must be positive");
    script.steps.push_back(std::move(step));
  }
  return script;
}

ScenarioScript load_scenario(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw std::runtime_error("cannot open scenario " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string to_text(const Step& step) {
  std::string out{keyword(step.kind)};
  switch (step.kind) {
    case StepKind::click:
      out += " " + step.target;
      if (step.count != 1) out += " " + std::to_string(step.count);
      break;
    case StepKind::advance: out += " " + std::to_string(step.ms); break;
    case StepKind::tick:
      if (step.count != 1) out += " " + std::to_string(step.count);
      break;
    case StepKind::timeout: break;
    case StepKind::expect:
      for (const auto& [k, v] : step.expectations) out += " " + k + "=" + v;
      break;
  }
  return out;
}

std::string to_text(const ScenarioScript& script) {
  std::string out;
  for (const auto& step : script.steps) out += to_text(step) + "\n";
  return out;
}

std::string ScenarioFailure::message() const {
  return "line " + std::to_string(line) + ": expected " + key + "=" + expected + ", got " +
         key + "=" + actual;
}

std::string format_observation(const Observation& observation) {
  std::string out;
  for (const auto& [k, v] : observation) {
    if (!out.empty()) out += ' ';
    out += k + "=" + v;
  }
  return out;
}

ScenarioResult run_scenario(const ScenarioScript& script, Harness& harness) {
  ScenarioResult result;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const Step& step = script.steps[i];
    switch (step.kind) {
      case StepKind::click:
        for (int n = 0; n < step.count; ++n) harness.perform_click(step.target);
        break;
      case StepKind::advance: harness.advance(std::chrono::milliseconds{step.ms}); break;
      case StepKind::tick: harness.tick(step.count); break;
      case StepKind::timeout: harness.timeout(); break;
      case StepKind::expect: break;
    }
    harness.pump();
    const Observation seen = harness.observe();

    if (step.kind == StepKind::expect) {
      for (const auto& [key, expected] : step.expectations) {
        const auto it = seen.find(key);
        const std::string actual = it == seen.end() ? "<missing>" : it->second;
        const bool tolerant = harness.real_time() && (key == "display" || key == "time");
        if (actual == expected || (tolerant && within_one(expected, actual))) continue;
        result.trace.push_back(to_text(step) + " FAILED");
        result.failure = ScenarioFailure{i, step.line, key, expected, actual};
        return result;
      }
      result.trace.push_back(to_text(step) + " ok");
    } else {
      result.trace.push_back(to_text(step) + " | " + format_observation(seen));
    }
  }
  return result;
}

}  // namespace reactorkit::testkit
