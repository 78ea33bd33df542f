#pragma once

#include <cstdio>
#include <string>

#include "clar/error.hpp"

namespace clar {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Doubles print at 17 significant digits so text round-trips are exact.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, std::size_t line_no);

}  // namespace clar
