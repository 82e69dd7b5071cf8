#pragma once

#include <cstdio>
#include <cstdlib>
#include <string_view>

#include <fmt/core.h>

// Minimal stderr logging; level from OPTMEAS_LOG = quiet | info | debug.
namespace optmeas::log {

enum class level { quiet = 0, info = 1, debug = 2 };

inline level current_level() {
  static const level lvl = [] {
    const char* env = std::getenv("OPTMEAS_LOG");
    if (env == nullptr) return level::quiet;
    const std::string_view v(env);
    if (v == "debug") return level::debug;
    if (v == "info") return level::info;
    return level::quiet;
  }();
  return lvl;
}

template <typename... Args>
void info(fmt::format_string<Args...> f, Args&&... args) {
  if (current_level() >= level::info) fmt::print(stderr, "[info] {}\n", fmt::format(f, std::forward<Args>(args)...));
}

template <typename... Args>
void debug(fmt::format_string<Args...> f, Args&&... args) {
  if (current_level() >= level::debug) fmt::print(stderr, "[debug] {}\n", fmt::format(f, std::forward<Args>(args)...));
}

}  // namespace optmeas::log
