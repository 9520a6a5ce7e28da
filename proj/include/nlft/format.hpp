#pragma once

#include <cstdio>
#include <string>

namespace nlft {

/// 17 significant digits: enough for exact double round trips in text
/// formats, so regression diffs are byte-stable.
inline std::string float17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace nlft
