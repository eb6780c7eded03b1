#pragma once

#include <stdexcept>
#include <string>

namespace spinnet {

enum class ErrorCategory { parse, capacity, degenerate, not_found };

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::capacity: return "capacity";
    case ErrorCategory::degenerate: return "degenerate";
    case ErrorCategory::not_found: return "not-found";
  }
  return "unknown";
}

inline int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::parse: return 2;
    case ErrorCategory::capacity: return 3;
    case ErrorCategory::degenerate: return 4;
    case ErrorCategory::not_found: return 5;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Malformed input, invalid curves and other bad arguments.
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCategory::parse, w) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error(ErrorCategory::capacity, w) {}
};

// Degenerate tetrahedra, vanishing thetas (undefined U) and unsupported degeneracies.
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& w) : Error(ErrorCategory::degenerate, w) {}
};

struct NotFoundError : Error {
  explicit NotFoundError(const std::string& w) : Error(ErrorCategory::not_found, w) {}
};

}  // namespace spinnet
