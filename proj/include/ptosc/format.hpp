#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace ptosc {

/// Shortest decimal form that round-trips the exact double (CSV fields).
inline std::string format_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Fixed 17-significant-digit scientific form (JSON fields); stable bytes
/// for diffing.
inline std::string format_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace ptosc
