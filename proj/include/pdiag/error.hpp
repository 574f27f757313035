#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdiag {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand shapes disagree.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// A documented precondition does not hold for the given input.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Iterative eigen-solver ran out of sweeps. `converged` counts the eigenvalues
// that had already deflated.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, std::size_t converged)
      : Error(msg), converged_(converged) {}
  std::size_t converged() const { return converged_; }

 private:
  std::size_t converged_;
};

// A construction could not be completed. `level` is the recursion depth where
// the violated condition was detected (0 = outermost).
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& msg, std::size_t level = 0)
      : Error(msg), level_(level) {}
  std::size_t level() const { return level_; }

 private:
  std::size_t level_;
};

// A construction produced output that failed its own post-hoc check.
class CertificationError : public Error {
 public:
  explicit CertificationError(const std::string& msg) : Error(msg) {}
};

}  // namespace pdiag
