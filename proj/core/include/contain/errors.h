#pragma once

#include <stdexcept>
#include <string>

namespace contain {

// Base for every error the library raises on purpose.
class ContainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public ContainError {
 public:
  using ContainError::ContainError;
};

// Eigensolver non-convergence, NaNs, or an interior-point run that ended
// without a verified status.
class NumericalFailure : public ContainError {
 public:
  using ContainError::ContainError;
};

class SingularPivot : public ContainError {
 public:
  using ContainError::ContainError;
};

// A polyhedron whose offsets are not all positive cannot be scaled to b = 1.
class NotNormalizable : public ContainError {
 public:
  using ContainError::ContainError;
};

class EmptySpectrahedron : public ContainError {
 public:
  using ContainError::ContainError;
};

class UnboundedSpectrahedron : public ContainError {
 public:
  using ContainError::ContainError;
};

// Raised by analytic certificate constructors when the containment they would
// certify does not hold.
class ContainmentFalse : public ContainError {
 public:
  ContainmentFalse(const std::string& what, int index = -1)
      : ContainError(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

class UsageError : public ContainError {
 public:
  using ContainError::ContainError;
};

// Malformed input file. what() carries the byte offset when known.
class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace contain
