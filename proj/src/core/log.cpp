#include "reactorkit/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace reactorkit {
namespace {

std::mutex g_sink_mutex;
LogSink g_sink;
std::atomic<LogLevel> g_level{LogLevel::warn};

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::debug: return "debug";
    case LogLevel::info: return "info";
    case LogLevel::warn: return "warn";
    case LogLevel::error: return "error";
  }
  return "?";
}

}  // namespace

void set_log_sink(LogSink sink) {
  std::lock_guard lock{g_sink_mutex};
  g_sink = std::move(sink);
}

void set_log_level(LogLevel level) { g_level.store(level); }

LogLevel log_level() { return g_level.load(); }

void log(LogLevel level, std::string_view message) {
  if (level < g_level.load()) return;
  std::lock_guard lock{g_sink_mutex};
  if (g_sink) {
    g_sink(level, message);
  } else {
    std::cerr << "[reactorkit " << level_name(level) << "] " << message << '\n';
  }
}

}  // namespace reactorkit
