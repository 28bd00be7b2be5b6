#pragma once

#include <stdexcept>
#include <string>

namespace qes {

// Thrown by to_heun when a negative exponent survives the multiplier
// (wrong Stackel multiplier for the operator at hand).
struct NonPolynomialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Polynomial coefficients exceed the X/Y/Z degree caps 4/3/2.
struct DegreeOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAlgebraizableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw sub-block entries of the Jacobi matrix leak past row n.
struct ClosureViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroVectorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvaluationOutOfDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qes
