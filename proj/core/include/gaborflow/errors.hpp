#pragma once

#include <stdexcept>
#include <string>

namespace gaborflow {

// Raised when inputs violate a documented precondition. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation fails at runtime (singular systems, nonconvergence).
// CLI maps this to exit code 1.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaborflow
