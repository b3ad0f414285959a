#pragma once

#include <stdexcept>

namespace lamb {

// Bad input: maps to exit code 1 in the CLI.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : ValidationError {
  using ValidationError::ValidationError;
};
struct PreconditionError : ValidationError {
  using ValidationError::ValidationError;
};
struct ShapeError : ValidationError {
  using ValidationError::ValidationError;
};
struct ResolutionError : ValidationError {
  using ValidationError::ValidationError;
};
struct CostGuardError : ValidationError {
  using ValidationError::ValidationError;
};
struct SingularityError : ValidationError {
  using ValidationError::ValidationError;
};
struct UndefinedRatioError : ValidationError {
  using ValidationError::ValidationError;
};

// Numerical failure during a computation: maps to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BracketError : NumericalError {
  using NumericalError::NumericalError;
};
struct TruncationError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace lamb
