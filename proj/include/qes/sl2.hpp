#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qes/matrix.hpp"
#include "qes/operators.hpp"

namespace qes {

/// Quadratic element of U[sl(2)] acting on the degree-n module:
/// q_pp J+J+ + q_p0 J+J0 + q_00 J0J0 + q_0m J0J- + q_mm J-J-
/// + l_p J+ + l_0 J0 + l_m J- + k.
struct Sl2Element {
  double q_pp = 0, q_p0 = 0, q_00 = 0, q_0m = 0, q_mm = 0;
  double l_p = 0, l_0 = 0, l_m = 0;
  double k = 0;
  int n = 0;
};

/// The three closure conditions on a Heun operator at representation
/// label n, with residuals scaled against the coefficient magnitude.
struct AlgebraizationCertificate {
  int n = 0;
  std::array<double, 3> residuals{};  // b3+2(n-1)a4, c1+n[(n-1)a3+b2], c2-n(n-1)a4
  double scale = 1.0;
  double tol = 0.0;
  bool passed = false;
};

constexpr double kDefaultAlgebraizationTol = 1e-9;

AlgebraizationCertificate check_algebraizable(const HeunOperator& h, int n,
                                              double tol = kDefaultAlgebraizationTol);

/// Smallest n in 0..n_max whose certificate passes, if any.
std::optional<int> find_n(const HeunOperator& h, int n_max,
                          double tol = kDefaultAlgebraizationTol);
/// Every passing n in 0..n_max (may be more than one; callers report ambiguity).
std::vector<int> find_all_n(const HeunOperator& h, int n_max,
                            double tol = kDefaultAlgebraizationTol);

/// Writes h as a quadratic element of U[sl(2)]. Throws NotAlgebraizableError
/// when the certificate fails at n.
Sl2Element realize_sl2(const HeunOperator& h, int n,
                       double tol = kDefaultAlgebraizationTol);

/// Expands the element back into a differential operator by composing the
/// generators; inverse of realize_sl2 on algebraizable operators.
HeunOperator expand_sl2(const Sl2Element& e);

enum class Generator { plus, zero, minus };

/// Matrix of a generator on the basis {1, x, ..., x^n}; column k holds the
/// image of x^k.
Matrix generator_matrix(Generator which, int n);

}  // namespace qes
