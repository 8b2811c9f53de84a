#pragma once

#include <cstdio>
#include <string>

namespace capplan {

// Locale guards: every number the tool emits goes through one of these, so the
// decimal separator is '.' regardless of the process locale.

inline std::string fix_decimal_point(std::string s) {
  for (char& c : s)
    if (c == ',') c = '.';
  return s;
}

// Scientific notation with 12 significant digits; the output contract format.
inline std::string format_sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return fix_decimal_point(buf);
}

// Shortest exact round-trip form; used for canonical unit strings.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return fix_decimal_point(buf);
}

}  // namespace capplan
