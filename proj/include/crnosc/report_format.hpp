#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace crnosc {

/// Rounds to the given number of significant digits; non-finite values pass through.
inline double round_sig(double x, int digits = 12) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

}  // namespace crnosc
