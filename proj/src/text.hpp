#pragma once

#include <cstdio>
#include <string>

namespace pfq::detail {

// Shortest-safe round-trip form for binary64.
inline std::string format_real(double v) {
  if (v == 0.0) return "0";  // folds -0 so text output stays canonical
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace pfq::detail
