#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace strainscope {

/// Fixed six-decimal rendering used by every numeric CSV column. Values that
/// round to zero print without a sign.
inline std::string fixed6(double value) {
  if (std::fabs(value) < 5e-7) value = 0.0;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

/// Rounds to six decimals for JSON output.
inline double round6(double value) {
  double r = std::round(value * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace strainscope
