#pragma once

#include <stdexcept>
#include <string>

namespace dmlab {

/// Invalid or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke a documented precondition (shape mismatch, exhausted
/// stream, index out of range).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Training produced a non-finite loss or parameter (CLI exit code 3).
/// Carries the iteration at which the divergence was detected.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long long iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  long long iteration() const { return iteration_; }

 private:
  long long iteration_;
};

/// File or format problem (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric procedure left its domain of validity (non-finite
/// finite-difference result, etc.).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dmlab
