#pragma once

#include <stdexcept>
#include <string>

namespace pspin {

/// Model parameters violate their domain (even p, s or lambda out of [0,1], ...).
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical stage did not reach its tolerance.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state vector handed to an observable is not unit norm.
class NotNormalized : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A density matrix fails positivity beyond the rounding floor.
class NonPhysicalState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeLimitExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pspin
