#pragma once

#include <string>

namespace circloyd::log {

enum class Level { error = 0, info = 1, debug = 2 };

// Resolved once from the CIRCLOYD_LOG environment variable (error|info|debug).
Level threshold();

void write(Level lv, const std::string& msg);

inline void error(const std::string& msg) { write(Level::error, msg); }
inline void info(const std::string& msg) { write(Level::info, msg); }
inline void debug(const std::string& msg) { write(Level::debug, msg); }

}  // namespace circloyd::log
