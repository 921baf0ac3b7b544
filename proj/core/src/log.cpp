#include "thermo/log.hpp"

#include <iostream>
#include <mutex>

namespace thermo {

namespace {

struct Logger {
  std::mutex mutex;
  LogSink sink;
  LogLevel level = LogLevel::Warning;
};

Logger& logger() {
  static Logger l;
  return l;
}

const char* label(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warning: return "warning";
    case LogLevel::Error: return "error";
    case LogLevel::Off: break;
  }
  return "";
}

}  // namespace

void set_log_sink(LogSink sink) {
  auto& l = logger();
  std::lock_guard lock(l.mutex);
  l.sink = std::move(sink);
}

void set_log_level(LogLevel level) {
  auto& l = logger();
  std::lock_guard lock(l.mutex);
  l.level = level;
}

LogLevel log_level() {
  auto& l = logger();
  std::lock_guard lock(l.mutex);
  return l.level;
}

void log(LogLevel level, const std::string& message) {
  auto& l = logger();
  std::lock_guard lock(l.mutex);
  if (level < l.level || level == LogLevel::Off) return;
  if (l.sink) {
    l.sink(level, message);
  } else {
    std::cerr << "[thermo] " << label(level) << ": " << message << '\n';
  }
}

}  // namespace thermo
