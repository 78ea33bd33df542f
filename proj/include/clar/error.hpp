#pragma once

#include <stdexcept>
#include <string>

namespace clar {

// Error categories surfaced through CLI exit diagnostics.
enum class ErrorCategory {
  ParseFormat,  // malformed input text, bad column counts, bad numbers
  Infeasible,   // matching cardinality/capacity cannot be satisfied
  Numeric,      // singular systems, divergence, failed convergence
  Io            // missing/unwritable files
};

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::ParseFormat: return "parse/format";
    case ErrorCategory::Infeasible: return "infeasible";
    case ErrorCategory::Numeric: return "numeric";
    case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory c, const std::string& message) {
  throw Error(c, message);
}

}  // namespace clar
