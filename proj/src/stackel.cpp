#include "qes/stackel.hpp"

#include <string>

#include "qes/errors.hpp"

namespace qes {

StackelMultiplier::StackelMultiplier(int mu) : exponent(mu) {
  if (mu < 0 || mu > 2)
    throw InvalidParamsError("Stackel multiplier must be x^mu with mu in {0,1,2}, got mu=" +
                             std::to_string(mu));
}

DualProblem stackel_transform(const LaurentOperator& h, const StackelMultiplier& u,
                              double energy, const std::string& role) {
  LaurentOperator shifted = h;
  shifted.p0.add_term(0, -energy);
  return DualProblem{to_heun(multiply_by_monomial(shifted, u.exponent)), role};
}

}  // namespace qes
