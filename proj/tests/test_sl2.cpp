#include <cmath>
#include <random>

#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/models.hpp"
#include "qes/sl2.hpp"

using namespace qes;

namespace {

HeunOperator hydrogen_hprime(double w, int m, int n) {
  HeunOperator h;
  h.a[1] = 1.0;
  h.b[2] = -2.0 * w;
  h.b[0] = 2.0 * std::abs(m) + 1.0;
  h.c[1] = 2.0 * w * n;
  return h;
}

}  // namespace

TEST_CASE("certificate residuals for the hydrogen instance") {
  HeunOperator h = hydrogen_hprime(0.5, 0, 1);
  AlgebraizationCertificate c1 = check_algebraizable(h, 1);
  CHECK(c1.passed);
  CHECK(c1.residuals[0] == 0.0);
  CHECK(c1.residuals[1] == 0.0);
  CHECK(c1.residuals[2] == 0.0);

  // same operator tested at n=2: r2 = c1 + 2 b2 = 1 - 2 = -1
  AlgebraizationCertificate c2 = check_algebraizable(h, 2);
  CHECK_FALSE(c2.passed);
  CHECK(c2.residuals[1] == doctest::Approx(-1.0));

  AlgebraizationCertificate c0 = check_algebraizable(HeunOperator{}, 0);
  CHECK(c0.passed);
}

TEST_CASE("find_n recovers the baked-in label") {
  CHECK(find_n(hydrogen_hprime(0.5, 0, 3), 8) == 3);
  CHECK(find_n(hydrogen_hprime(1.25, 2, 5), 8) == 5);

  HeunOperator bad;
  bad.c[1] = 1.0;
  bad.b[2] = 0.0;  // c1 = -n[(n-1)a3+b2] = 0 for every n
  CHECK_FALSE(find_n(bad, 10).has_value());

  // two-electrons-on-sphere instance with the n=2 energy baked in
  HeunOperator sp;
  sp.a[3] = 1.0;
  sp.a[1] = -1.0;
  sp.b[2] = 2.0;  // delta
  sp.b[0] = -1.0;
  sp.c[1] = -2.0 * (1.0 + 2.0);
  CHECK(find_n(sp, 8) == 2);
}

TEST_CASE("realization matches the printed sl(2) forms") {
  const double w = 0.8;
  const int m = 1, n = 2;
  Sl2Element e = realize_sl2(hydrogen_hprime(w, m, n), n);
  // J0 J- + 2w J+ + (n/2 + 2|m| + 1) J-
  CHECK(e.q_0m == 1.0);
  CHECK(e.l_p == doctest::Approx(2.0 * w));
  CHECK(e.l_m == doctest::Approx(n / 2.0 + 2.0 * std::abs(m) + 1.0));
  CHECK(e.q_pp == 0.0);
  CHECK(e.q_00 == 0.0);
  CHECK(e.l_0 == 0.0);
  CHECK(e.k == 0.0);

  // cosmology: J0J- + 2 J+ + beta J0 + (1 - g5 + n/2) J- + beta n/2
  const double beta = 0.6, g5 = 0.3;
  HeunOperator hn;
  hn.a[1] = 1.0;
  hn.b[2] = -2.0;
  hn.b[1] = beta;
  hn.b[0] = 1.0 - g5;
  hn.c[1] = 2.0 * n;
  Sl2Element en = realize_sl2(hn, n);
  CHECK(en.q_0m == 1.0);
  CHECK(en.l_p == doctest::Approx(2.0));
  CHECK(en.l_0 == doctest::Approx(beta));
  CHECK(en.l_m == doctest::Approx(1.0 - g5 + n / 2.0));
  CHECK(en.k == doctest::Approx(beta * n / 2.0));

  CHECK_THROWS_AS(realize_sl2(hydrogen_hprime(0.5, 0, 1), 2), NotAlgebraizableError);

  Sl2Element zero = realize_sl2(HeunOperator{}, 3);
  CHECK(zero.q_0m == 0.0);
  CHECK(zero.l_m == 0.0);
  CHECK(zero.k == 0.0);
}

TEST_CASE("expansion of single generators") {
  Sl2Element jm;
  jm.n = 4;
  jm.l_m = 1.0;
  HeunOperator h = expand_sl2(jm);  // d/dx
  CHECK(h.b[0] == 1.0);
  CHECK(h.max_abs_coeff() == 1.0);

  Sl2Element j0;
  j0.n = 4;
  j0.l_0 = 1.0;
  HeunOperator h0 = expand_sl2(j0);  // x d - n/2
  CHECK(h0.b[1] == 1.0);
  CHECK(h0.c[0] == -2.0);
}

TEST_CASE("realize/expand round trip on catalog operators") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.2, 2.5);
  for (ModelId id : all_models()) {
    for (int n = 0; n <= 5; ++n) {
      ModelParams p;
      switch (id) {
        case ModelId::hydrogen2d: p.set("omega_L", uni(rng)); p.set("m", 1); break;
        case ModelId::hooke_oscillator: p.set("omega_r", uni(rng)); p.set("l", 2); break;
        case ModelId::hooke_magnetic:
          p.set("omega_0", uni(rng)); p.set("omega_L", uni(rng)); p.set("m", -1); break;
        case ModelId::electrons_sphere: p.set("gamma", uni(rng)); p.set("delta", uni(rng)); break;
        case ModelId::inverse_quartic:
          p.set("a", uni(rng)); p.set("c", uni(rng) - 1.0); p.set("d", uni(rng)); break;
        case ModelId::inverse_sextic:
          p.set("omega", uni(rng)); p.set("c", uni(rng) - 1.0); p.set("d", uni(rng));
          p.set("l", 0); break;
        case ModelId::newtonian_cosmology:
          p.set("B2", uni(rng) - 1.0); p.set("B3", -uni(rng)); p.set("B5", 0.1); break;
      }
      PreparedProblem pp = build(id, p, n);
      HeunOperator back = expand_sl2(realize_sl2(pp.hprime, n));
      const double scale = std::max(pp.hprime.max_abs_coeff(), 1.0);
      for (int i = 0; i < 5; ++i)
        CHECK(std::abs(back.a[i] - pp.hprime.a[i]) <= 1e-12 * scale);
      for (int i = 0; i < 4; ++i)
        CHECK(std::abs(back.b[i] - pp.hprime.b[i]) <= 1e-12 * scale);
      for (int i = 0; i < 3; ++i)
        CHECK(std::abs(back.c[i] - pp.hprime.c[i]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("generator matrices") {
  Matrix jm = generator_matrix(Generator::minus, 2);
  CHECK(jm(0, 1) == 1.0);
  CHECK(jm(1, 2) == 2.0);
  CHECK(jm(0, 0) == 0.0);

  Matrix j0 = generator_matrix(Generator::zero, 2);
  CHECK(j0(0, 0) == -1.0);
  CHECK(j0(1, 1) == 0.0);
  CHECK(j0(2, 2) == 1.0);

  Matrix jp = generator_matrix(Generator::plus, 1);
  CHECK(jp(1, 0) == 1.0);
  CHECK(jp(0, 1) == 0.0);
}

TEST_CASE("commutators hold exactly for n <= 12") {
  for (int n = 0; n <= 12; ++n) {
    Matrix jp = generator_matrix(Generator::plus, n);
    Matrix j0 = generator_matrix(Generator::zero, n);
    Matrix jm = generator_matrix(Generator::minus, n);
    CHECK((j0 * jp - jp * j0) == jp);
    CHECK((j0 * jm - jm * j0) == jm * (-1.0));
    CHECK((jp * jm - jm * jp) == j0 * 2.0);
  }
}

TEST_CASE("algebraizable operators preserve P_{n+1}") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int n = 4;
  HeunOperator h = hydrogen_hprime(0.9, 1, n);
  LaurentOperator op = to_laurent(h);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(static_cast<size_t>(n) + 1);
    for (auto& v : c) v = uni(rng);
    LaurentPoly img = apply_operator(op, Polynomial(c)).chop(1e-12);
    if (!img.is_zero()) CHECK(img.max_exponent() <= n);
  }
}
