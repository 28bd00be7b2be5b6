#pragma once

#include <string>

#include "qes/operators.hpp"

namespace qes {

/// Monomial Stackel multiplier U(x) = x^mu, valid on x > 0.
/// The catalog only ever needs mu in {0, 1, 2}; anything else is rejected.
struct StackelMultiplier {
  explicit StackelMultiplier(int mu);
  int exponent;
};

/// Coupling/energy pair tied together by coupling constant metamorphosis.
struct CcmPair {
  double alpha;
  double energy;
};

/// Role exchange alpha' <-> E, E' <-> alpha. Involution.
inline CcmPair ccm_swap(const CcmPair& p) { return CcmPair{p.energy, p.alpha}; }

/// The transformed problem H' y = alpha' y, plus a tag describing which
/// physical parameter the eigenvalue of H' represents (e.g. "Z", "-2R").
struct DualProblem {
  HeunOperator hprime;
  std::string eigen_constant_role;
};

/// H' = x^mu (H - energy * Id), converted to Heun form.
/// Propagates NonPolynomialError / DegreeOverflowError from to_heun when
/// the multiplier does not fit the operator.
DualProblem stackel_transform(const LaurentOperator& h, const StackelMultiplier& u,
                              double energy, const std::string& role = "alpha");

}  // namespace qes
