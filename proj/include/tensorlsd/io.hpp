#pragma once

#include <charconv>
#include <string>

namespace tensorlsd {

// Shortest round-trip decimal form, '.' separator regardless of locale.
inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace tensorlsd
