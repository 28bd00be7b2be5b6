#include "qes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qes/errors.hpp"
#include "qes/jacobi.hpp"
#include "qes/matrix.hpp"

namespace qes {

std::vector<double> Grid::sample() const {
  if (points < 2) throw InvalidParamsError("grid needs at least 2 points");
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw InvalidParamsError("grid requires 0 < r_min < r_max");
  std::vector<double> r(static_cast<size_t>(points));
  if (spacing == Spacing::log_spaced) {
    const double la = std::log(r_min), lb = std::log(r_max);
    for (int i = 0; i < points; ++i)
      r[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (points - 1));
  } else {
    for (int i = 0; i < points; ++i)
      r[static_cast<size_t>(i)] = r_min + (r_max - r_min) * i / (points - 1);
  }
  return r;
}

Grid Grid::residual_default(ModelId model) {
  Grid g;
  if (model == ModelId::electrons_sphere) {
    // the sphere variable z = u/2R lives in (0,1)
    g = Grid{0.02, 0.98, 1000, Spacing::uniform};
  }
  return g;
}

Grid Grid::fd_default(ModelId model) {
  Grid g{0.05, 30.0, 20000, Spacing::uniform};
  if (model == ModelId::inverse_sextic) g = Grid{0.1, 12.0, 20000, Spacing::uniform};
  return g;
}

namespace {

// LHS(r) and RHS(r) of the original radial equation, with RHS the
// energy-eigenvalue side.
struct RadialEquation {
  std::function<double(double)> lhs;
  std::function<double(double)> rhs;
};

RadialEquation radial_equation(ModelId model, const ModelParams& params, int n,
                               double lambda, const Wavefunction& psi) {
  const Interpretation interp = interpret_eigenvalue(model, lambda, params, n);
  switch (model) {
    case ModelId::hydrogen2d: {
      const double w = params.require("omega_L");
      const int m = params.require_int("m");
      const double am = std::abs(m);
      const double Z = lambda;
      const double E = w * (n + am + 1.0 + m);
      return {[=](double r) {
                return -psi.deriv2(r) +
                       ((m * m - 0.25) / (r * r) + w * w * r * r + Z / r) * psi.value(r);
              },
              [=](double r) { return 2.0 * (E - m * w) * psi.value(r); }};
    }
    case ModelId::hooke_oscillator: {
      const double w = params.require("omega_r");
      const int l = params.require_int("l");
      const double Z = lambda;
      const double eps = (2.0 * n + 2.0 * l + 3.0) * w;
      return {[=](double r) {
                return -psi.deriv2(r) +
                       (w * w * r * r + Z / r + l * (l + 1.0) / (r * r)) * psi.value(r);
              },
              [=](double r) { return eps * psi.value(r); }};
    }
    case ModelId::hooke_magnetic: {
      const double w0 = params.require("omega_0");
      const double wl = params.require("omega_L");
      const int m = params.require_int("m");
      const double am = std::abs(m);
      const double wt = 0.5 * std::hypot(wl, w0);
      const double Z = lambda;
      const double eps = m * wl + 2.0 * (n + am + 1.0) * wt;
      return {[=](double r) {
                return -psi.deriv2(r) +
                       ((m * m - 0.25) / (r * r) + wt * wt * r * r + Z / r) * psi.value(r);
              },
              [=](double r) { return (eps - m * wl) * psi.value(r); }};
    }
    case ModelId::electrons_sphere: {
      const double g = params.require("gamma");
      const double de = params.require("delta");
      if (!interp.admissible)
        throw InvalidParamsError("sphere eigenpair with nonpositive radius is not verifiable");
      const double R = interp.outputs.at("R");
      const double E = interp.outputs.at("E");
      return {[=](double z) {
                return (z * z - 1.0) * psi.deriv2(z) +
                       (de * z - 1.0 / (g * z)) * psi.deriv1(z) + (2.0 * R / z) * psi.value(z);
              },
              [=](double z) { return 4.0 * R * R * E * psi.value(z); }};
    }
    case ModelId::inverse_quartic: {
      const double a = params.require("a");
      const double c = params.require("c");
      const double d = params.require("d");
      const double b = interp.outputs.at("b");
      const double E = interp.outputs.at("E");
      return {[=](double r) {
                const double r2 = r * r;
                return -psi.deriv2(r) +
                       (2.0 * a / r + 2.0 * b / r2 + 2.0 * c / (r2 * r) + 2.0 * d / (r2 * r2)) *
                           psi.value(r);
              },
              [=](double r) { return 2.0 * E * psi.value(r); }};
    }
    case ModelId::inverse_sextic: {
      const double w = params.require("omega");
      const double c = params.require("c");
      const double d = params.require("d");
      const double ll1 = interp.outputs.at("ll1");
      const double E = (2.0 * n + 2.0 + c / std::sqrt(2.0 * d)) * w;
      return {[=](double r) {
                const double r2 = r * r;
                return -psi.deriv2(r) + (ll1 / r2 + w * w * r2 + 2.0 * c / (r2 * r2) +
                                         2.0 * d / (r2 * r2 * r2)) *
                                            psi.value(r);
              },
              [=](double r) { return 2.0 * E * psi.value(r); }};
    }
    case ModelId::newtonian_cosmology: {
      const double b2 = params.require("B2");
      const double b3 = params.require("B3");
      const double b5 = params.require("B5");
      const double tau = std::pow(-b3, 0.25);
      const double beta = b2 / (tau * tau * tau);
      const double b4 = interp.outputs.at("B4");
      const double b1 = interp.outputs.at("B1");
      // in the scaled variable x = tau r:
      // psi'' + (B1/tau^2 + beta x - x^2 + (B4/tau)/x + B5/x^2) psi = 0
      return {[=](double x) {
                return psi.deriv2(x) + (beta * x - x * x + (b4 / tau) / x + b5 / (x * x)) *
                                           psi.value(x);
              },
              [=](double x) { return -(b1 / (tau * tau)) * psi.value(x); }};
    }
  }
  throw std::logic_error("unknown model id");
}

}  // namespace

ResidualReport ode_residual(ModelId model, const ModelParams& params, int n, double lambda,
                            const Polynomial& y, const Grid& grid, double tol) {
  const Wavefunction psi = wavefunction(model, params, y, n);
  const RadialEquation eq = radial_equation(model, params, n, lambda, psi);
  const std::vector<double> rs = grid.sample();

  double rhs_scale = 0.0;
  for (double r : rs) rhs_scale = std::max(rhs_scale, std::abs(eq.rhs(r)));
  const double floor = std::max(rhs_scale, 1e-300) * 1e-12;

  ResidualReport rep;
  rep.samples = static_cast<int>(rs.size());
  rep.tol = tol;
  for (double r : rs) {
    const double rhs = eq.rhs(r);
    const double rel = std::abs(eq.lhs(r) - rhs) / std::max(std::abs(rhs), floor);
    if (rel > rep.max_rel_residual) {
      rep.max_rel_residual = rel;
      rep.argmax_r = r;
    }
  }
  rep.pass = rep.max_rel_residual <= tol;
  return rep;
}

ResidualReport duality_check(ModelId model, const ModelParams& params, int n, double lambda,
                             const Polynomial& y, int sample_points, double tol) {
  const PreparedProblem pp = build(model, params, n);
  Grid grid = Grid::residual_default(model);
  grid.points = sample_points;
  const std::vector<double> xs = grid.sample();

  // H' y as a Laurent polynomial, and the original-side combination
  // H y - lambda x^{-mu} y - E y, evaluated pointwise.
  const LaurentPoly hy_prime = apply_operator(to_laurent(pp.hprime), y);
  const LaurentPoly hy = apply_operator(pp.h, y);
  const int mu = pp.multiplier.exponent;

  double worst = 0.0, at = xs.front();
  for (double x : xs) {
    const double yx = y.eval(x);
    const double r1 = hy_prime.eval(x) - lambda * yx;
    const double s1 = std::abs(hy_prime.eval(x)) + std::abs(lambda * yx);
    const double r2 = hy.eval(x) - lambda * std::pow(x, -mu) * yx - pp.stackel_energy * yx;
    const double s2 = std::abs(hy.eval(x)) + std::abs(lambda * std::pow(x, -mu) * yx) +
                      std::abs(pp.stackel_energy * yx);
    const double rel = std::max(std::abs(r1) / std::max(s1, 1e-300),
                                std::abs(r2) / std::max(s2, 1e-300));
    if (rel > worst) {
      worst = rel;
      at = x;
    }
  }
  ResidualReport rep;
  rep.max_rel_residual = worst;
  rep.argmax_r = at;
  rep.samples = static_cast<int>(xs.size());
  rep.tol = tol;
  rep.pass = worst <= tol;
  return rep;
}

bool fd_supported(ModelId model) {
  return model == ModelId::hydrogen2d || model == ModelId::hooke_oscillator ||
         model == ModelId::hooke_magnetic || model == ModelId::inverse_sextic;
}

namespace {

// Weighted finite-volume discretization for -v'' - (2 nu / r) v' + Vreg v
// (the exact substitution u = r^nu v): cell-centered on [0, rmax], natural
// boundary at the origin, Dirichlet at rmax, symmetrized to a tridiagonal.
std::vector<double> fd_weighted(const std::function<double(double)>& vreg, double nu,
                                double rmax, int cells, int k) {
  const double h = rmax / cells;
  std::vector<double> diag(static_cast<size_t>(cells)), off(static_cast<size_t>(cells) - 1);
  std::vector<double> w(static_cast<size_t>(cells)), wf(static_cast<size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) wf[static_cast<size_t>(i)] = std::pow(i * h, 2.0 * nu);
  for (int i = 0; i < cells; ++i) {
    const double r = (i + 0.5) * h;
    w[static_cast<size_t>(i)] = std::pow(r, 2.0 * nu);
    diag[static_cast<size_t>(i)] =
        ((wf[static_cast<size_t>(i)] + wf[static_cast<size_t>(i) + 1]) / (h * h) +
         w[static_cast<size_t>(i)] * vreg(r)) /
        w[static_cast<size_t>(i)];
  }
  for (int i = 0; i + 1 < cells; ++i)
    off[static_cast<size_t>(i)] = -wf[static_cast<size_t>(i) + 1] / (h * h) /
                                  std::sqrt(w[static_cast<size_t>(i)] * w[static_cast<size_t>(i) + 1]);
  return tridiag_smallest_eigenvalues(diag, off, k);
}

// Plain 3-point Dirichlet discretization of -u'' + V u on [rmin, rmax];
// adequate when the wavefunction is gauge-suppressed at the inner end.
std::vector<double> fd_plain(const std::function<double(double)>& v, double rmin, double rmax,
                             int points, int k) {
  const int n = points;
  const double h = (rmax - rmin) / (n - 1);
  std::vector<double> diag(static_cast<size_t>(n) - 2), off(static_cast<size_t>(n) - 3);
  for (int i = 1; i <= n - 2; ++i)
    diag[static_cast<size_t>(i - 1)] = 2.0 / (h * h) + v(rmin + i * h);
  for (size_t i = 0; i < off.size(); ++i) off[i] = -1.0 / (h * h);
  return tridiag_smallest_eigenvalues(diag, off, k);
}

}  // namespace

std::vector<double> fd_spectrum(ModelId model, const ModelParams& params, const Grid& grid,
                                int k) {
  if (!fd_supported(model))
    throw InvalidParamsError("fd_spectrum does not support model '" + to_string(model) +
                             "' (radial Schroedinger form required)");
  if (grid.points < 16) throw InvalidParamsError("fd grid too coarse");

  switch (model) {
    case ModelId::hydrogen2d: {
      const double w = params.require("omega_L");
      const int m = params.require_int("m");
      const double Z = params.require("Z");
      const double nu = std::abs(m) + 0.5;
      auto lam = fd_weighted([=](double r) { return w * w * r * r + Z / r; }, nu, grid.r_max,
                             grid.points, k);
      for (double& x : lam) x = x / 2.0 + m * w;  // lambda = 2(E - m omega_L)
      return lam;
    }
    case ModelId::hooke_oscillator: {
      const double w = params.require("omega_r");
      const int l = params.require_int("l");
      const double Z = params.require("Z");
      return fd_weighted([=](double r) { return w * w * r * r + Z / r; }, l + 1.0, grid.r_max,
                         grid.points, k);
    }
    case ModelId::hooke_magnetic: {
      const double w0 = params.require("omega_0");
      const double wl = params.require("omega_L");
      const int m = params.require_int("m");
      const double wt = 0.5 * std::hypot(wl, w0);
      const double Z = params.require("Z");
      const double nu = std::abs(m) + 0.5;
      auto lam = fd_weighted([=](double r) { return wt * wt * r * r + Z / r; }, nu, grid.r_max,
                             grid.points, k);
      for (double& x : lam) x += m * wl;  // lambda = eps - m omega_L
      return lam;
    }
    case ModelId::inverse_sextic: {
      const double w = params.require("omega");
      const double c = params.require("c");
      const double d = params.require("d");
      const double ll1 = params.require("ll1");
      auto lam = fd_plain(
          [=](double r) {
            const double r2 = r * r;
            return ll1 / r2 + w * w * r2 + 2.0 * c / (r2 * r2) + 2.0 * d / (r2 * r2 * r2);
          },
          grid.r_min, grid.r_max, grid.points, k);
      for (double& x : lam) x /= 2.0;
      return lam;
    }
    default:
      throw std::logic_error("unreachable");
  }
}

}  // namespace qes
