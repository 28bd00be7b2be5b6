#include "qes/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qes/errors.hpp"

namespace qes {

double HeunOperator::max_abs_coeff() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  for (double v : b) m = std::max(m, std::abs(v));
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

LaurentPoly apply_operator(const LaurentOperator& op, const Polynomial& y) {
  return op.p2 * y.derivative().derivative() + op.p1 * y.derivative() + op.p0 * y;
}

LaurentOperator multiply_by_monomial(const LaurentOperator& op, int mu) {
  return LaurentOperator{op.p2.shifted(mu), op.p1.shifted(mu), op.p0.shifted(mu)};
}

namespace {

template <size_t N>
void collect(const LaurentPoly& p, std::array<double, N>& out, const char* which) {
  for (const auto& [e, v] : p.terms()) {
    if (e < 0)
      throw NonPolynomialError(std::string(which) + " keeps negative exponent " +
                               std::to_string(e) + "; unsuitable multiplier");
    if (e >= static_cast<int>(N))
      throw DegreeOverflowError(std::string(which) + " has degree " + std::to_string(e) +
                                " > " + std::to_string(N - 1));
    out[static_cast<size_t>(e)] = v;
  }
}

}  // namespace

HeunOperator to_heun(const LaurentOperator& op) {
  HeunOperator h;
  collect(op.p2, h.a, "X(x)");
  collect(op.p1, h.b, "Y(x)");
  collect(op.p0, h.c, "Z(x)");
  return h;
}

LaurentOperator to_laurent(const HeunOperator& h) {
  LaurentOperator op;
  for (int k = 0; k < 5; ++k) op.p2.add_term(k, h.a[static_cast<size_t>(k)]);
  for (int k = 0; k < 4; ++k) op.p1.add_term(k, h.b[static_cast<size_t>(k)]);
  for (int k = 0; k < 3; ++k) op.p0.add_term(k, h.c[static_cast<size_t>(k)]);
  return op;
}

}  // namespace qes
