#pragma once

#include <stdexcept>
#include <string>

namespace prophet_lab {

// Bad argument value or shape (out-of-range x, mismatched sizes, n = 0, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Missing or malformed external configuration (alpha tables, schedule files,
// instance files).
class ConfigurationError : public std::runtime_error {
 public:
  explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prophet_lab
