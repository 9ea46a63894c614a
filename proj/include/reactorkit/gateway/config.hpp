#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reactorkit::gateway {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RuntimeConfig {
  /// 0 asks the OS for a free port.
  int port = 8080;

  struct Counter {
    int min = 0;
    int max = 10;
  } counter;

  struct Timer {
    int max_time = 99;
    int idle_timeout_s = 3;
    int tick_period_s = 1;
  } timer;

  struct Prime {
    int pool_size = 2;
    int chunk_budget = 1000;
    int slots = 4;
  } prime;

  /// Throws ConfigError for values the apps would reject.
  void validate() const;
};

/// Flat key=value text, one entry per line, '#' starts a comment. Keys: port, counter.min,
/// counter.max, timer.max_time, timer.idle_timeout_s, timer.tick_period_s, prime.pool_size,
/// prime.chunk_budget, prime.slots. Unknown keys and malformed values throw ConfigError.
RuntimeConfig parse_config(std::string_view text, RuntimeConfig base = {});
RuntimeConfig load_config(const std::string& path, RuntimeConfig base = {});

inline constexpr std::string_view port_env_var = "REACTORKIT_PORT";

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

/// Applies REACTORKIT_PORT on top of `config`. Reads the process environment by default.
RuntimeConfig apply_env(RuntimeConfig config, const EnvLookup& lookup = {});

std::string to_text(const RuntimeConfig& config);

}  // namespace reactorkit::gateway
