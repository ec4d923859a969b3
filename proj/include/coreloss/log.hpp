#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace coreloss {

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

/// Verbosity comes from the CORELOSS_LOG environment variable
/// (quiet | info | debug), defaulting to info.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("CORELOSS_LOG");
        if (env == nullptr) return LogLevel::kInfo;
        const std::string v(env);
        if (v == "quiet") return LogLevel::kQuiet;
        if (v == "debug") return LogLevel::kDebug;
        return LogLevel::kInfo;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::kInfo) std::cerr << "[coreloss] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::kDebug) std::cerr << "[coreloss:debug] " << msg << "\n";
}

}  // namespace coreloss
