#pragma once

#include <array>

#include "qes/polynomial.hpp"

namespace qes {

/// Second-order differential operator p2 d^2/dx^2 + p1 d/dx + p0 with
/// Laurent-polynomial coefficients. Immutable by convention; all
/// operations on it are pure.
struct LaurentOperator {
  LaurentPoly p2;
  LaurentPoly p1;
  LaurentPoly p0;
};

/// Heun-type operator X d^2 + Y d + Z with deg X <= 4, deg Y <= 3,
/// deg Z <= 2. Coefficients a[k], b[k], c[k] are the x^k coefficients
/// of X, Y, Z respectively.
struct HeunOperator {
  std::array<double, 5> a{};  // X
  std::array<double, 4> b{};  // Y
  std::array<double, 3> c{};  // Z

  double max_abs_coeff() const;
};

/// p2 y'' + p1 y' + p0 y by exact coefficient convolution.
LaurentPoly apply_operator(const LaurentOperator& op, const Polynomial& y);

/// Left-multiplies the operator by x^mu (every coefficient exponent shifts).
LaurentOperator multiply_by_monomial(const LaurentOperator& op, int mu);

/// Conversion with degree checks: throws NonPolynomialError if a negative
/// exponent remains, DegreeOverflowError past the 4/3/2 caps.
HeunOperator to_heun(const LaurentOperator& op);

/// Inverse embedding of to_heun.
LaurentOperator to_laurent(const HeunOperator& h);

}  // namespace qes
