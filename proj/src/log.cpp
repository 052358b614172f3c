#include "circloyd/log.hpp"

#include <cstdlib>
#include <iostream>

namespace circloyd::log {

namespace {

Level parse_env() {
  const char* value = std::getenv("CIRCLOYD_LOG");
  if (value == nullptr) return Level::error;
  const std::string s(value);
  if (s == "debug") return Level::debug;
  if (s == "info") return Level::info;
  return Level::error;
}

const char* tag(Level lv) {
  switch (lv) {
    case Level::error: return "error";
    case Level::info: return "info";
    case Level::debug: return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() {
  static const Level lv = parse_env();
  return lv;
}

void write(Level lv, const std::string& msg) {
  if (lv <= threshold()) {
    std::cerr << "circloyd [" << tag(lv) << "] " << msg << "\n";
  }
}

}  // namespace circloyd::log
