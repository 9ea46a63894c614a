#pragma once

#include <functional>
#include <string_view>

namespace reactorkit {

enum class LogLevel { debug, info, warn, error };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide sink. Passing an empty function restores stderr.
void set_log_sink(LogSink sink);
void set_log_level(LogLevel level);
LogLevel log_level();

void log(LogLevel level, std::string_view message);

}  // namespace reactorkit
