#pragma once

#include <stdexcept>
#include <string>

namespace nrgg {

// Error categories map one-to-one onto the CLI exit codes.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested computation is not supported for the given (dimension, norm).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Root finding failed or a formula left its domain.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public NumericError {
 public:
  explicit DomainError(const std::string& what) : NumericError(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the clique solver when the configured branch-node budget runs out.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nrgg
