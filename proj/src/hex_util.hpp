#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "mpmm/error.hpp"

namespace mpmm::detail {

inline std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

// Exact parse of a C99 hex float ("0x1.8p+3"); decimal also accepted.
inline double parse_double(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw FormatError("empty number");
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw FormatError("bad number '" + s + "'");
  }
  return v;
}

inline std::vector<double> split_hex_components(std::string_view text, std::size_t count) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != count) {
    throw FormatError("expected " + std::to_string(count) + " components in '" + std::string(text) + "'");
  }
  return out;
}

}  // namespace mpmm::detail
