#pragma once

#include <charconv>
#include <string>

namespace conical {

/// Fixed-point text independent of the process locale.
inline std::string format_fixed(double value, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace conical
