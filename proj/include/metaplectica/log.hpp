#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace metaplectica::logging {

enum class Level { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

/** Reads METAPLECTICA_LOG once; unset or unknown values mean warn. */
inline Level threshold() {
  static const Level cached = [] {
    const char* env = std::getenv("METAPLECTICA_LOG");
    if (env == nullptr) {
      return Level::warn;
    }
    std::string s(env);
    for (char& c : s) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (s == "off" || s == "none") {
      return Level::off;
    }
    if (s == "error") {
      return Level::error;
    }
    if (s == "info") {
      return Level::info;
    }
    if (s == "debug") {
      return Level::debug;
    }
    return Level::warn;
  }();
  return cached;
}

inline void emit(Level lvl, const char* tag, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(threshold())) {
    std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
  }
}

inline void error(const std::string& msg) { emit(Level::error, "error", msg); }
inline void warn(const std::string& msg) { emit(Level::warn, "warn", msg); }
inline void info(const std::string& msg) { emit(Level::info, "info", msg); }
inline void debug(const std::string& msg) { emit(Level::debug, "debug", msg); }

}  // namespace metaplectica::logging
