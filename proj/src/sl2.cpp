#include "qes/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qes/errors.hpp"

namespace qes {

AlgebraizationCertificate check_algebraizable(const HeunOperator& h, int n, double tol) {
  if (n < 0) throw InvalidParamsError("representation label n must be >= 0");
  const double dn = n;
  AlgebraizationCertificate cert;
  cert.n = n;
  cert.tol = tol;
  cert.residuals[0] = h.b[3] + 2.0 * (dn - 1.0) * h.a[4];
  cert.residuals[1] = h.c[1] + dn * ((dn - 1.0) * h.a[3] + h.b[2]);
  cert.residuals[2] = h.c[2] - dn * (dn - 1.0) * h.a[4];
  cert.scale = std::max(h.max_abs_coeff(), 1.0);
  cert.passed = true;
  for (double r : cert.residuals)
    if (std::abs(r) > tol * cert.scale) cert.passed = false;
  return cert;
}

std::optional<int> find_n(const HeunOperator& h, int n_max, double tol) {
  for (int n = 0; n <= n_max; ++n)
    if (check_algebraizable(h, n, tol).passed) return n;
  return std::nullopt;
}

std::vector<int> find_all_n(const HeunOperator& h, int n_max, double tol) {
  std::vector<int> out;
  for (int n = 0; n <= n_max; ++n)
    if (check_algebraizable(h, n, tol).passed) out.push_back(n);
  return out;
}

Sl2Element realize_sl2(const HeunOperator& h, int n, double tol) {
  const AlgebraizationCertificate cert = check_algebraizable(h, n, tol);
  if (!cert.passed)
    throw NotAlgebraizableError(
        "operator fails the closure conditions at n=" + std::to_string(n) +
        " (residuals " + std::to_string(cert.residuals[0]) + ", " +
        std::to_string(cert.residuals[1]) + ", " + std::to_string(cert.residuals[2]) + ")");
  const double dn = n;
  Sl2Element e;
  e.n = n;
  e.q_pp = h.a[4];
  e.q_p0 = -h.a[3];
  e.q_00 = h.a[2];
  e.q_0m = h.a[1];
  e.q_mm = h.a[0];
  e.l_p = -((3.0 * dn - 2.0) / 2.0 * h.a[3] + h.b[2]);
  e.l_0 = (dn - 1.0) * h.a[2] + h.b[1];
  e.l_m = dn / 2.0 * h.a[1] + h.b[0];
  e.k = dn / 2.0 * ((dn / 2.0 - 1.0) * h.a[2] + h.b[1]) + h.c[0];
  return e;
}

namespace {

// First-order operator p1 d/dx + p0 with polynomial coefficients.
struct FirstOrderOp {
  Polynomial p1;
  Polynomial p0;
};

FirstOrderOp make_generator(Generator g, int n) {
  const double dn = n;
  switch (g) {
    case Generator::plus:
      return {Polynomial{0, 0, -1}, Polynomial{0, dn}};  // -x^2 d + n x
    case Generator::zero:
      return {Polynomial{0, 1}, Polynomial{-dn / 2.0}};  // x d - n/2
    case Generator::minus:
      return {Polynomial{1}, Polynomial{}};  // d
  }
  throw std::logic_error("unreachable");
}

// (P1 d + Q1)(P2 d + Q2) = P1 P2 d^2 + (P1 P2' + P1 Q2 + Q1 P2) d
//                          + (P1 Q2' + Q1 Q2)
LaurentOperator compose(const FirstOrderOp& a, const FirstOrderOp& b) {
  LaurentOperator op;
  op.p2 = LaurentPoly(a.p1 * b.p1);
  op.p1 = LaurentPoly(a.p1 * b.p1.derivative() + a.p1 * b.p0 + a.p0 * b.p1);
  op.p0 = LaurentPoly(a.p1 * b.p0.derivative() + a.p0 * b.p0);
  return op;
}

void accumulate(LaurentOperator& acc, const LaurentOperator& op, double w) {
  if (w == 0.0) return;
  acc.p2 = acc.p2 + op.p2.scaled(w);
  acc.p1 = acc.p1 + op.p1.scaled(w);
  acc.p0 = acc.p0 + op.p0.scaled(w);
}

}  // namespace

HeunOperator expand_sl2(const Sl2Element& e) {
  const FirstOrderOp jp = make_generator(Generator::plus, e.n);
  const FirstOrderOp j0 = make_generator(Generator::zero, e.n);
  const FirstOrderOp jm = make_generator(Generator::minus, e.n);

  LaurentOperator acc;
  accumulate(acc, compose(jp, jp), e.q_pp);
  accumulate(acc, compose(jp, j0), e.q_p0);
  accumulate(acc, compose(j0, j0), e.q_00);
  accumulate(acc, compose(j0, jm), e.q_0m);
  accumulate(acc, compose(jm, jm), e.q_mm);

  acc.p1 = acc.p1 + LaurentPoly(jp.p1).scaled(e.l_p) + LaurentPoly(j0.p1).scaled(e.l_0) +
           LaurentPoly(jm.p1).scaled(e.l_m);
  acc.p0 = acc.p0 + LaurentPoly(jp.p0).scaled(e.l_p) + LaurentPoly(j0.p0).scaled(e.l_0) +
           LaurentPoly(jm.p0).scaled(e.l_m);
  acc.p0.add_term(0, e.k);
  return to_heun(acc);
}

Matrix generator_matrix(Generator which, int n) {
  if (n < 0) throw InvalidParamsError("representation label n must be >= 0");
  Matrix m(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    switch (which) {
      case Generator::minus:
        if (k >= 1) m(k - 1, k) = k;
        break;
      case Generator::zero:
        m(k, k) = k - static_cast<double>(n) / 2.0;
        break;
      case Generator::plus:
        if (k + 1 <= n) m(k + 1, k) = n - k;
        break;
    }
  }
  return m;
}

}  // namespace qes
