#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/jacobi.hpp"
#include "qes/models.hpp"
#include "qes/pipeline.hpp"

using namespace qes;

namespace {

ModelParams random_params(ModelId id, std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.2, 2.5);
  std::uniform_int_distribution<int> mdist(-2, 2);
  std::uniform_int_distribution<int> ldist(0, 3);
  ModelParams p;
  switch (id) {
    case ModelId::hydrogen2d:
      p.set("omega_L", uni(rng));
      p.set("m", mdist(rng));
      break;
    case ModelId::hooke_oscillator:
      p.set("omega_r", uni(rng));
      p.set("l", ldist(rng));
      break;
    case ModelId::hooke_magnetic:
      p.set("omega_0", uni(rng));
      p.set("omega_L", uni(rng));
      p.set("m", mdist(rng));
      break;
    case ModelId::electrons_sphere:
      p.set("gamma", uni(rng));
      p.set("delta", uni(rng));
      break;
    case ModelId::inverse_quartic:
      p.set("a", uni(rng));
      p.set("c", uni(rng) - 1.0);
      p.set("d", uni(rng));
      break;
    case ModelId::inverse_sextic:
      p.set("omega", uni(rng));
      p.set("c", uni(rng) - 1.0);
      p.set("d", uni(rng));
      p.set("l", ldist(rng));
      break;
    case ModelId::newtonian_cosmology:
      p.set("B2", uni(rng) - 1.25);
      p.set("B3", -uni(rng));
      p.set("B5", 0.25 - uni(rng));
      break;
  }
  return p;
}

std::vector<double> real_sorted_eigenvalues(const SolveReport& rep) {
  std::vector<double> out;
  for (const auto& e : rep.eigenpairs)
    if (e.eigenvalue.imag() == 0.0) out.push_back(e.eigenvalue.real());
  return out;
}

}  // namespace

TEST_CASE("worked hydrogen2d instance") {
  ModelParams p;
  p.set("omega_L", 0.5);
  p.set("m", 0);
  SolveReport rep = solve_model(ModelId::hydrogen2d, p, 1);
  REQUIRE(rep.eigenpairs.size() == 2);
  CHECK(rep.eigenpairs[0].eigenvalue.real() == doctest::Approx(-1.0));
  CHECK(rep.eigenpairs[1].eigenvalue.real() == doctest::Approx(1.0));
  CHECK(rep.energy == doctest::Approx(1.0));
  CHECK(rep.eigenvalue_role == "Z");
  CHECK(rep.certificate.passed);

  // n = 0: single eigenvalue 0 (free case), flagged trivial coupling
  SolveReport rep0 = solve_model(ModelId::hydrogen2d, p, 0);
  REQUIRE(rep0.eigenpairs.size() == 1);
  CHECK(std::abs(rep0.eigenpairs[0].eigenvalue.real()) < 1e-14);
  bool trivial = false;
  for (const auto& r : rep0.eigenpairs[0].reasons)
    if (r == "coupling vanishes") trivial = true;
  CHECK(trivial);
}

TEST_CASE("electrons_sphere worked instances") {
  ModelParams p;
  p.set("gamma", 1.0);
  p.set("delta", 2.0);

  SolveReport rep = solve_model(ModelId::electrons_sphere, p, 1);
  REQUIRE(rep.eigenpairs.size() == 2);
  CHECK(rep.eigenpairs[0].eigenvalue.real() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(rep.eigenpairs[1].eigenvalue.real() == doctest::Approx(std::sqrt(2.0)));
  // only the positive radius is admissible
  CHECK(rep.eigenpairs[0].admissible);
  CHECK(rep.eigenpairs[0].outputs.at("R") == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(rep.eigenpairs[0].outputs.at("E") == doctest::Approx(1.0));
  CHECK_FALSE(rep.eigenpairs[1].admissible);
  CHECK(rep.energy == doctest::Approx(1.0));  // E_1 = gamma

  SolveReport rep2 = solve_model(ModelId::electrons_sphere, p, 2);
  REQUIRE(rep2.eigenpairs.size() == 3);
  int zero_count = 0, nonphys = 0;
  for (const auto& e : rep2.eigenpairs) {
    if (std::abs(e.eigenvalue.real()) < 1e-10) {
      ++zero_count;
      if (!e.admissible) ++nonphys;
    }
  }
  CHECK(zero_count == 1);
  CHECK(nonphys == 1);  // R = 0 is rejected
}

TEST_CASE("newtonian n=0 constraint gives B4 = 0 when B5 = 0") {
  ModelParams p;
  p.set("B2", 0.7);
  p.set("B3", -1.0);
  p.set("B5", 0.0);
  SolveReport rep = solve_model(ModelId::newtonian_cosmology, p, 0);
  REQUIRE(rep.eigenpairs.size() == 1);
  CHECK(std::abs(rep.eigenpairs[0].eigenvalue.real()) < 1e-14);
  CHECK(rep.eigenpairs[0].outputs.at("B4") == doctest::Approx(0.0));
  CHECK(rep.derived.at("tau") == doctest::Approx(1.0));
}

TEST_CASE("energy closed forms") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(0.2, 2.5);

  ModelParams h;
  h.set("omega_L", 0.5);
  h.set("m", 0);
  CHECK(energy(ModelId::hydrogen2d, h, 1) == doctest::Approx(1.0));

  ModelParams ho;
  ho.set("omega_r", 1.0);
  ho.set("l", 0);
  CHECK(energy(ModelId::hooke_oscillator, ho, 2) == doctest::Approx(7.0));

  ModelParams sp;
  sp.set("gamma", 1.0);
  sp.set("delta", 2.0);
  CHECK(energy(ModelId::electrons_sphere, sp, 0) == doctest::Approx(0.0));

  for (int trial = 0; trial < 10; ++trial) {
    const double w = uni(rng);
    const int m = trial % 3 - 1;
    ModelParams p;
    p.set("omega_L", w);
    p.set("m", m);
    CHECK(energy(ModelId::hydrogen2d, p, 1) ==
          doctest::Approx((m + std::abs(m) + 2.0) * w).epsilon(1e-12));
    CHECK(energy(ModelId::hydrogen2d, p, 2) ==
          doctest::Approx((m + std::abs(m) + 3.0) * w).epsilon(1e-12));

    const double wr = uni(rng);
    const int l = trial % 3;
    ModelParams q;
    q.set("omega_r", wr);
    q.set("l", l);
    CHECK(energy(ModelId::hooke_oscillator, q, 1) ==
          doctest::Approx((5.0 + 2.0 * l) * wr).epsilon(1e-12));
    CHECK(energy(ModelId::hooke_oscillator, q, 2) ==
          doctest::Approx((7.0 + 2.0 * l) * wr).epsilon(1e-12));
  }
}

TEST_CASE("closed-form n=1 eigenvalue constraints (paper forms)") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    {
      ModelParams p = random_params(ModelId::hydrogen2d, rng);
      const double w = p.require("omega_L");
      const double am = std::abs(p.require_int("m"));
      auto ev = real_sorted_eigenvalues(solve_model(ModelId::hydrogen2d, p, 1));
      REQUIRE(ev.size() == 2);
      const double expect = std::sqrt(2.0 * (2.0 * am + 1.0) * w);
      CHECK(ev[0] == doctest::Approx(-expect).epsilon(1e-10));
      CHECK(ev[1] == doctest::Approx(expect).epsilon(1e-10));
    }
    {
      ModelParams p = random_params(ModelId::hooke_oscillator, rng);
      const double w = p.require("omega_r");
      const double l = p.require_int("l");
      auto ev = real_sorted_eigenvalues(solve_model(ModelId::hooke_oscillator, p, 1));
      const double expect = 2.0 * std::sqrt((l + 1.0) * w);
      CHECK(ev[1] == doctest::Approx(expect).epsilon(1e-10));
    }
    {
      ModelParams p = random_params(ModelId::hooke_magnetic, rng);
      const double wt = 0.5 * std::hypot(p.require("omega_L"), p.require("omega_0"));
      const double am = std::abs(p.require_int("m"));
      auto ev = real_sorted_eigenvalues(solve_model(ModelId::hooke_magnetic, p, 1));
      const double expect = std::sqrt(2.0 * wt * (2.0 * am + 1.0));
      CHECK(ev[1] == doctest::Approx(expect).epsilon(1e-10));
    }
    {
      ModelParams p = random_params(ModelId::electrons_sphere, rng);
      const double g = p.require("gamma"), de = p.require("delta");
      auto ev = real_sorted_eigenvalues(solve_model(ModelId::electrons_sphere, p, 1));
      CHECK(std::abs(ev[0]) * 0.5 == doctest::Approx(0.5 * std::sqrt(de / g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("monic eigenpolynomials match printed forms") {
  // hooke n=2, y1 = r^2 - (3+2l)/(2 omega_r)
  ModelParams p;
  p.set("omega_r", 0.9);
  p.set("l", 1);
  SolveReport rep = solve_model(ModelId::hooke_oscillator, p, 2);
  int hit = -1;
  for (size_t i = 0; i < rep.eigenpairs.size(); ++i)
    if (std::abs(rep.eigenpairs[i].eigenvalue.real()) < 1e-9) hit = static_cast<int>(i);
  REQUIRE(hit >= 0);
  const auto& poly = rep.eigenpairs[static_cast<size_t>(hit)].poly;
  REQUIRE(poly.size() == 3);
  CHECK(poly[2].real() == doctest::Approx(1.0));
  CHECK(poly[1].real() == doctest::Approx(0.0));
  CHECK(poly[0].real() == doctest::Approx(-(3.0 + 2.0) / (2.0 * 0.9)).epsilon(1e-9));

  // hydrogen n=1: y = r +- sqrt((2|m|+1)/(2 omega))
  ModelParams hp;
  hp.set("omega_L", 0.5);
  hp.set("m", 0);
  SolveReport h1 = solve_model(ModelId::hydrogen2d, hp, 1);
  CHECK(h1.eigenpairs[0].poly[0].real() == doctest::Approx(-1.0));
  CHECK(h1.eigenpairs[1].poly[0].real() == doctest::Approx(1.0));
}

TEST_CASE("quartic n=1 matches the printed constraint") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    ModelParams p = random_params(ModelId::inverse_quartic, rng);
    const double a = p.require("a"), c = p.require("c"), d = p.require("d");
    const double s = std::sqrt(2.0 * d);
    const double kap = 1.0 + c / s;
    const double disc = kap * kap - 4.0 * a * s / (2.0 + c / s);
    SolveReport rep = solve_model(ModelId::inverse_quartic, p, 1);
    if (disc >= 0.0) {
      auto ev = real_sorted_eigenvalues(rep);
      REQUIRE(ev.size() == 2);
      CHECK(ev[0] == doctest::Approx(kap - std::sqrt(disc)).epsilon(1e-10));
      CHECK(ev[1] == doctest::Approx(kap + std::sqrt(disc)).epsilon(1e-10));
      // b output reproduces the printed map
      const double b_expect =
          0.5 * (ev[1] + (c / s) * (1.0 + c / s)) + a * s / (2.0 + c / s);
      CHECK(rep.eigenpairs[1].outputs.at("b") == doctest::Approx(b_expect).epsilon(1e-12));
    } else {
      for (const auto& e : rep.eigenpairs) {
        CHECK(e.eigenvalue.imag() != 0.0);
        CHECK_FALSE(e.admissible);
      }
    }
  }
}

TEST_CASE("sextic n=1 matches the printed constraint") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    ModelParams p = random_params(ModelId::inverse_sextic, rng);
    const double w = p.require("omega"), c = p.require("c"), d = p.require("d");
    const double s = std::sqrt(2.0 * d);
    const double base = 1.0 + c / (2.0 * s);
    const double root = std::sqrt(base * base + w * s);
    auto ev = real_sorted_eigenvalues(solve_model(ModelId::inverse_sextic, p, 1));
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(base - root).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(base + root).epsilon(1e-10));
  }
}

TEST_CASE("newtonian n=1 matches the printed constraint") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 3; ++trial) {
    ModelParams p = random_params(ModelId::newtonian_cosmology, rng);
    const double b2 = p.require("B2"), b3 = p.require("B3"), b5 = p.require("B5");
    const double tau = std::pow(-b3, 0.25);
    const double g5 = std::sqrt(1.0 - 4.0 * b5);
    const double beta = b2 / (tau * tau * tau);
    const double root = std::sqrt(beta * beta / 4.0 + 2.0 * (1.0 - g5));
    auto ev = real_sorted_eigenvalues(solve_model(ModelId::newtonian_cosmology, p, 1));
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(beta / 2.0 - root).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(beta / 2.0 + root).epsilon(1e-10));
  }
}

TEST_CASE("hydrogen n=2 eigenvalue multiset") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    ModelParams p = random_params(ModelId::hydrogen2d, rng);
    const double w = p.require("omega_L");
    const double am = std::abs(p.require_int("m"));
    auto ev = real_sorted_eigenvalues(solve_model(ModelId::hydrogen2d, p, 2));
    REQUIRE(ev.size() == 3);
    const double expect = 2.0 * std::sqrt((3.0 + 4.0 * am) * w);
    CHECK(ev[0] == doctest::Approx(-expect).epsilon(1e-10));
    CHECK(std::abs(ev[1]) < 1e-10 * std::max(1.0, expect));
    CHECK(ev[2] == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("n=2 characteristic polynomials match the paper-derived cubics") {
  std::mt19937 rng(43);

  // sphere: alpha^3 - (2/gamma)(3 + 2 gamma + 2 delta + gamma delta) alpha
  {
    ModelParams p = random_params(ModelId::electrons_sphere, rng);
    const double g = p.require("gamma"), de = p.require("delta");
    PreparedProblem pp = build(ModelId::electrons_sphere, p, 2);
    Polynomial cp = characteristic_poly(build_jacobi(pp.hprime, 2));
    CHECK(cp.coeff(3) == doctest::Approx(1.0));
    CHECK(std::abs(cp.coeff(2)) < 1e-9);
    CHECK(cp.coeff(1) ==
          doctest::Approx(-(2.0 / g) * (3.0 + 2.0 * g + 2.0 * de + g * de)).epsilon(1e-9));
    CHECK(std::abs(cp.coeff(0)) < 1e-9 * cp.max_abs_coeff());
  }

  // sextic: alpha^3 - (8 + 3c/s) alpha^2 + (c^2/d + 10 c/s - 4 w s + 12) alpha
  //         + 4 w (c + 3 s)
  {
    ModelParams p = random_params(ModelId::inverse_sextic, rng);
    const double w = p.require("omega"), c = p.require("c"), d = p.require("d");
    const double s = std::sqrt(2.0 * d);
    PreparedProblem pp = build(ModelId::inverse_sextic, p, 2);
    Polynomial cp = characteristic_poly(build_jacobi(pp.hprime, 2));
    CHECK(cp.coeff(2) == doctest::Approx(-(8.0 + 3.0 * c / s)).epsilon(1e-9));
    CHECK(cp.coeff(1) ==
          doctest::Approx(c * c / d + 10.0 * c / s - 4.0 * w * s + 12.0).epsilon(1e-9));
    CHECK(cp.coeff(0) == doctest::Approx(4.0 * w * (c + 3.0 * s)).epsilon(1e-9));
  }

  // cosmology, after mapping the cubic variable A = tau^3 lambda:
  // A^3 - 3 B2 A^2 + (2 B2^2 - 12 tau^6 + 8 g5 tau^6) A + 8 B2 tau^6 (1 - g5)
  {
    ModelParams p = random_params(ModelId::newtonian_cosmology, rng);
    const double b2 = p.require("B2"), b3 = p.require("B3"), b5 = p.require("B5");
    const double tau = std::pow(-b3, 0.25);
    const double g5 = std::sqrt(1.0 - 4.0 * b5);
    const double t3 = tau * tau * tau;
    const double t6 = t3 * t3;
    PreparedProblem pp = build(ModelId::newtonian_cosmology, p, 2);
    Polynomial cp = characteristic_poly(build_jacobi(pp.hprime, 2));
    CHECK(t3 * cp.coeff(2) == doctest::Approx(-3.0 * b2).epsilon(1e-9));
    CHECK(t6 * cp.coeff(1) ==
          doctest::Approx(2.0 * b2 * b2 - 12.0 * t6 + 8.0 * g5 * t6).epsilon(1e-9));
    CHECK(t6 * t3 * cp.coeff(0) ==
          doctest::Approx(8.0 * b2 * t6 * (1.0 - g5)).epsilon(1e-9));
  }

  // quartic, corrected closed form:
  // alpha^3 - (6k+2) alpha^2 + (8k^2 + 4k + 16 B s) alpha - 16 B s (2k+1)
  {
    ModelParams p = random_params(ModelId::inverse_quartic, rng);
    const double a = p.require("a"), c = p.require("c"), d = p.require("d");
    const double s = std::sqrt(2.0 * d);
    const double kap = 1.0 + c / s;
    const double B = a / (3.0 + c / s);
    PreparedProblem pp = build(ModelId::inverse_quartic, p, 2);
    Polynomial cp = characteristic_poly(build_jacobi(pp.hprime, 2));
    CHECK(cp.coeff(2) == doctest::Approx(-(6.0 * kap + 2.0)).epsilon(1e-9));
    CHECK(cp.coeff(1) ==
          doctest::Approx(8.0 * kap * kap + 4.0 * kap + 16.0 * B * s).epsilon(1e-9));
    CHECK(cp.coeff(0) == doctest::Approx(-16.0 * B * s * (2.0 * kap + 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("certificates pass across the catalog for n in 0..5") {
  std::mt19937 rng(47);
  for (ModelId id : all_models())
    for (int n = 0; n <= 5; ++n) {
      ModelParams p = random_params(id, rng);
      PreparedProblem pp = build(id, p, n);
      CHECK(pp.certificate.passed);
      for (double r : pp.certificate.residuals)
        CHECK(std::abs(r) <= 1e-9 * pp.certificate.scale);
    }
}

TEST_CASE("invalid parameters are rejected") {
  ModelParams p;
  p.set("omega_L", -1.0);
  p.set("m", 0);
  CHECK_THROWS_AS(build(ModelId::hydrogen2d, p, 1), InvalidParamsError);

  ModelParams q;
  q.set("B2", 0.5);
  q.set("B3", 1.0);  // must be negative
  q.set("B5", 0.0);
  CHECK_THROWS_AS(build(ModelId::newtonian_cosmology, q, 1), InvalidParamsError);

  ModelParams r;
  r.set("B2", 0.5);
  r.set("B3", -1.0);
  r.set("B5", 0.3);  // 1 - 4 B5 < 0
  CHECK_THROWS_AS(build(ModelId::newtonian_cosmology, r, 1), InvalidParamsError);

  ModelParams s;
  s.set("a", 1.0);
  s.set("c", 0.5);
  s.set("d", -1.0);
  CHECK_THROWS_AS(build(ModelId::inverse_quartic, s, 1), InvalidParamsError);

  ModelParams t;
  t.set("omega_L", 1.0);
  t.set("m", 0.5);  // non-integer
  CHECK_THROWS_AS(build(ModelId::hydrogen2d, t, 1), InvalidParamsError);

  ModelParams missing;
  CHECK_THROWS_AS(build(ModelId::hydrogen2d, missing, 1), InvalidParamsError);
}

TEST_CASE("wavefunction closed forms") {
  // hydrogen2d: u(r) = r^{1/2} e^{-r^2/4} (r + 1) at omega_L = 1/2, m = 0
  ModelParams p;
  p.set("omega_L", 0.5);
  p.set("m", 0);
  Wavefunction u = wavefunction(ModelId::hydrogen2d, p, Polynomial{1, 1}, 1);
  for (double r : {0.3, 1.0, 2.7}) {
    const double expect = std::sqrt(r) * std::exp(-r * r / 4.0) * (r + 1.0);
    CHECK(u.value(r) == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK_THROWS_AS(u.value(-1.0), EvaluationOutOfDomainError);

  // hooke n=0: u = r^{l+1} e^{-w r^2 / 2}
  ModelParams q;
  q.set("omega_r", 0.8);
  q.set("l", 2);
  Wavefunction u0 = wavefunction(ModelId::hooke_oscillator, q, Polynomial{1}, 0);
  for (double r : {0.5, 1.5}) {
    CHECK(u0.value(r) ==
          doctest::Approx(std::pow(r, 3) * std::exp(-0.4 * r * r)).epsilon(1e-14));
  }

  // sextic gauge: psi = r^{3/2 + c/s} exp(-w r^2/2 - s/(2 r^2)) y(r^2)
  ModelParams sx;
  sx.set("omega", 1.1);
  sx.set("c", 0.3);
  sx.set("d", 0.6);
  sx.set("l", 0);
  const double s = std::sqrt(1.2);
  Wavefunction us = wavefunction(ModelId::inverse_sextic, sx, Polynomial{-0.7, 1}, 1);
  for (double r : {0.8, 1.9}) {
    const double expect = std::pow(r, 1.5 + 0.3 / s) *
                          std::exp(-0.55 * r * r - s / (2.0 * r * r)) * (r * r - 0.7);
    CHECK(us.value(r) == doctest::Approx(expect).epsilon(1e-13));
  }

  // derivatives agree with central differences
  const double r0 = 1.37, h = 1e-5;
  CHECK(us.deriv1(r0) ==
        doctest::Approx((us.value(r0 + h) - us.value(r0 - h)) / (2.0 * h)).epsilon(1e-8));
  CHECK(us.deriv2(r0) ==
        doctest::Approx((us.value(r0 + h) - 2.0 * us.value(r0) + us.value(r0 - h)) /
                        (h * h)).epsilon(1e-5));
}

TEST_CASE("newtonian converter reproduces the parameter map") {
  const double E = 0.85, Ad = 0.2, Aq = 0.4, Av = -0.5, Am = 0.3, Ar = 0.0;
  const double G = 1.0, mu = 1.0, hbar = 1.0, Lambda = 2.0;
  auto b = newtonian_b_params(E, Ad, Aq, Av, Am, Ar, G, mu, hbar, Lambda);
  const double common = 8.0 * 3.14159265358979323846 * G * mu * mu / 3.0;
  CHECK(b.at("B1") == doctest::Approx(2.0 * E + common * Ad).epsilon(1e-12));
  CHECK(b.at("B2") == doctest::Approx(common * Aq).epsilon(1e-12));
  CHECK(b.at("B4") == doctest::Approx(common * Am).epsilon(1e-12));
  CHECK(b.at("B5") == doctest::Approx(0.0));
}

TEST_CASE("report serialization round-trips and stays deterministic") {
  ModelParams p;
  p.set("omega_L", 1.0 / 3.0);
  p.set("m", 1);
  SolveReport rep = solve_model(ModelId::hydrogen2d, p, 2);
  const std::string a = report_to_json(rep);
  const std::string b = report_to_json(solve_model(ModelId::hydrogen2d, p, 2));
  CHECK(a == b);
  CHECK(a.find("\"model\":\"hydrogen2d\"") != std::string::npos);
  CHECK(a.find("\"im\":") != std::string::npos);

  const std::string row = report_to_csv_row(rep);
  CHECK(row.find("hydrogen2d,2") == 0);
}
