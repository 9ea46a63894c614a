#include "reactorkit/gateway/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace reactorkit::gateway {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_value(std::string_view key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": not an integer: " + std::string(text));
  }
  return value;
}


int* field(RuntimeConfig& c, std::string_view key) {
  if (key == "port") return &c.port;
  if (key == "counter.min") return &c.counter.min;
  if (key == "counter.max") return &c.counter.max;
  if (key == "timer.max_time") return &c.timer.max_time;
  if (key == "timer.idle_timeout_s") return &c.timer.idle_timeout_s;
  if (key == "timer.tick_period_s") return &c.timer.tick_period_s;
  if (key == "prime.pool_size") return &c.prime.pool_size;
  if (key == "prime.chunk_budget") return &c.prime.chunk_budget;
  if (key == "prime.slots") return &c.prime.slots;
  return nullptr;
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void RuntimeConfig::validate() const {
  require(port >= 0 && port <= 65535, "port must be in 0..65535");
  require(counter.min >= 0, "counter.min must not be negative");
  require(counter.max > counter.min, "counter.max must exceed counter.min");
  require(timer.max_time >= 1 && timer.max_time <= 99, "timer.max_time must be in 1..99");
  require(timer.idle_timeout_s >= 1, "timer.idle_timeout_s must be positive");
  require(timer.tick_period_s >= 1, "timer.tick_period_s must be positive");
  require(prime.pool_size >= 1, "prime.pool_size must be positive");
  require(prime.chunk_budget >= 1, "prime.chunk_budget must be positive");
  require(prime.slots >= 1, "prime.slots must be positive");
}

RuntimeConfig parse_config(std::string_view text, RuntimeConfig base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view entry = raw;
    if (const auto hash = entry.find('#'); hash != std::string_view::npos) {
      entry = entry.substr(0, hash);
    }
    entry = trim(entry);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key=value");
    }
    const auto key = trim(entry.substr(0, eq));
    int* target = field(base, key);
    if (!target) throw ConfigError("line " + std::to_string(line) + ": unknown key " + std::string(key));
    *target = parse_value(key, trim(entry.substr(eq + 1)));
  }
  base.validate();
  return base;
}

RuntimeConfig load_config(const std::string& path, RuntimeConfig base) {
  std::ifstream in{path};
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), base);
}

RuntimeConfig apply_env(RuntimeConfig config, const EnvLookup& lookup) {
  std::optional<std::string> port;
  if (lookup) {
    port = lookup(port_env_var);
  } else if (const char* v = std::getenv(std::string(port_env_var).c_str())) {
    port = v;
  }
  if (port && !port->empty()) {
    config.port = parse_value(port_env_var, trim(*port));
    config.validate();
  }
  return config;
}

std::string to_text(const RuntimeConfig& c) {
  std::ostringstream out;
  out << "port=" << c.port << "\n"
      << "counter.min=" << c.counter.min << "\n"
      << "counter.max=" << c.counter.max << "\n"
      << "timer.max_time=" << c.timer.max_time << "\n"
      << "timer.idle_timeout_s=" << c.timer.idle_timeout_s << "\n"
      << "timer.tick_period_s=" << c.timer.tick_period_s << "\n"
      << "prime.pool_size=" << c.prime.pool_size << "\n"
      << "prime.chunk_budget=" << c.prime.chunk_budget << "\n"
      << "prime.slots=" << c.prime.slots << "\n";
  return out.str();
}

}  // namespace reactorkit::gateway
