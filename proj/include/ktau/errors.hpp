#pragma once

#include <stdexcept>
#include <string>

namespace ktau {

// Bad arguments, malformed configuration or input files. The CLI maps these
// to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical pathology at run time (non-convergence, non-finite values).
// The CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Files that cannot be opened, read or written. Exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ktau
