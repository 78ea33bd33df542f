#include "clar/io_util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace clar {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::Io, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCategory::Io, "cannot write file: " + path);
  out << content;
  if (!out) fail(ErrorCategory::Io, "write failed: " + path);
}

double parse_double(const std::string& s, std::size_t line_no) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(ErrorCategory::ParseFormat,
         "line " + std::to_string(line_no) + ": unparseable real '" + s + "'");
  return v;
}

}  // namespace clar
