#pragma once

#include <functional>
#include <string>

namespace thermo {

enum class LogLevel { Debug = 0, Info = 1, Warning = 2, Error = 3, Off = 4 };

using LogSink = std::function<void(LogLevel, const std::string&)>;

/// Replaces the process-wide sink (default: stderr). Pass an empty function to restore it.
void set_log_sink(LogSink sink);
void set_log_level(LogLevel level);
LogLevel log_level();

void log(LogLevel level, const std::string& message);
inline void log_info(const std::string& m) { log(LogLevel::Info, m); }
inline void log_warning(const std::string& m) { log(LogLevel::Warning, m); }

}  // namespace thermo
