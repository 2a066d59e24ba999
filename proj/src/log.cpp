#include "lidepth/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace lidepth::log {

namespace {

Level parse_level(const char* value) {
  if (value == nullptr || *value == '\0') return Level::warn;
  if (std::strcmp(value, "error") == 0 || std::strcmp(value, "0") == 0)
    return Level::error;
  if (std::strcmp(value, "warn") == 0 || std::strcmp(value, "1") == 0)
    return Level::warn;
  if (std::strcmp(value, "info") == 0 || std::strcmp(value, "2") == 0)
    return Level::info;
  if (std::strcmp(value, "debug") == 0 || std::strcmp(value, "3") == 0)
    return Level::debug;
  return Level::warn;
}

const char* level_tag(Level level) {
  switch (level) {
    case Level::error:
      return "error";
    case Level::warn:
      return "warn";
    case Level::info:
      return "info";
    case Level::debug:
      return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() {
  static const Level cached = parse_level(std::getenv("LIDEPTH_LOG"));
  return cached;
}

void write(Level level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(threshold())) return;
  std::fprintf(stderr, "[lidepth %s] %s\n", level_tag(level), message.c_str());
}

}  // namespace lidepth::log
