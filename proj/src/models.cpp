#include "qes/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qes/errors.hpp"
#include "qes/jacobi.hpp"

namespace qes {

const std::vector<ModelId>& all_models() {
  static const std::vector<ModelId> ids = {
      ModelId::hydrogen2d,      ModelId::hooke_oscillator, ModelId::hooke_magnetic,
      ModelId::electrons_sphere, ModelId::inverse_quartic,  ModelId::inverse_sextic,
      ModelId::newtonian_cosmology};
  return ids;
}

std::string to_string(ModelId id) {
  switch (id) {
    case ModelId::hydrogen2d: return "hydrogen2d";
    case ModelId::hooke_oscillator: return "hooke_oscillator";
    case ModelId::hooke_magnetic: return "hooke_magnetic";
    case ModelId::electrons_sphere: return "electrons_sphere";
    case ModelId::inverse_quartic: return "inverse_quartic";
    case ModelId::inverse_sextic: return "inverse_sextic";
    case ModelId::newtonian_cosmology: return "newtonian_cosmology";
  }
  throw std::logic_error("unknown model id");
}

std::optional<ModelId> model_from_string(const std::string& name) {
  for (ModelId id : all_models())
    if (to_string(id) == name) return id;
  return std::nullopt;
}

double ModelParams::require(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw InvalidParamsError("missing parameter '" + name + "'");
  return it->second;
}

int ModelParams::require_int(const std::string& name) const {
  const double v = require(name);
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9)
    throw InvalidParamsError("parameter '" + name + "' must be an integer, got " +
                             std::to_string(v));
  return static_cast<int>(r);
}

double ModelParams::get_or(const std::string& name, double fallback) const {
  auto it = values_.find(name);
  return it == values_.end() ? fallback : it->second;
}

std::vector<ParamSpec> model_schema(ModelId id) {
  switch (id) {
    case ModelId::hydrogen2d:
      return {{"omega_L", "> 0 (Larmor frequency)"}, {"m", "integer (angular momentum)"}};
    case ModelId::hooke_oscillator:
      return {{"omega_r", "> 0 (relative-motion frequency)"},
              {"l", "integer >= 0 (angular momentum)"}};
    case ModelId::hooke_magnetic:
      return {{"omega_0", ">= 0 (oscillator frequency)"},
              {"omega_L", ">= 0 (Larmor frequency); omega_0, omega_L not both 0"},
              {"m", "integer (angular momentum)"}};
    case ModelId::electrons_sphere:
      return {{"gamma", "> 0"}, {"delta", "> 0"}};
    case ModelId::inverse_quartic:
      return {{"a", "1/r coupling"}, {"c", "1/r^3 coupling"}, {"d", "> 0 (1/r^4 coupling)"}};
    case ModelId::inverse_sextic:
      return {{"omega", "> 0"},
              {"c", "1/r^4 coupling"},
              {"d", "> 0 (1/r^6 coupling)"},
              {"l", "integer >= 0; the eigenvalue constrains l(l+1)"}};
    case ModelId::newtonian_cosmology:
      return {{"B2", "linear-potential coefficient"},
              {"B3", "< 0 (quadratic coefficient)"},
              {"B5", "<= 1/4 (inverse-square coefficient)"},
              {"B1", "derived from the quantization condition (echoed if supplied)", false},
              {"B4", "constrained per eigenvalue (echoed if supplied)", false}};
  }
  throw std::logic_error("unknown model id");
}

namespace {

double require_positive(const ModelParams& p, const std::string& name) {
  const double v = p.require(name);
  if (!(v > 0.0)) throw InvalidParamsError("parameter '" + name + "' must be > 0");
  return v;
}

double sphere_radius_squared_largest(const ModelParams& params, int n);

}  // namespace

PreparedProblem build(ModelId model, const ModelParams& params, int n) {
  if (n < 0) throw InvalidParamsError("n must be >= 0");
  PreparedProblem pp;
  pp.model = model;
  pp.params = params;
  pp.n = n;
  const double dn = n;

  switch (model) {
    case ModelId::hydrogen2d: {
      const double w = require_positive(params, "omega_L");
      const int m = params.require_int("m");
      const double am = std::abs(m);
      pp.h.p2.add_term(0, 1.0);
      pp.h.p1.add_term(1, -2.0 * w);
      pp.h.p1.add_term(-1, 2.0 * am + 1.0);
      pp.multiplier = StackelMultiplier(1);
      pp.stackel_energy = -2.0 * dn * w;
      pp.eigenvalue_role = "Z";
      pp.gauge = GaugeFactor{am + 0.5, -w / 2.0, 0.0, 0.0, 0.0, false};
      pp.energy = w * (dn + am + 1.0 + m);
      break;
    }
    case ModelId::hooke_oscillator: {
      const double w = require_positive(params, "omega_r");
      const int l = params.require_int("l");
      if (l < 0) throw InvalidParamsError("l must be >= 0");
      pp.h.p2.add_term(0, 1.0);
      pp.h.p1.add_term(1, -2.0 * w);
      pp.h.p1.add_term(-1, 2.0 * l + 2.0);
      pp.multiplier = StackelMultiplier(1);
      pp.stackel_energy = -2.0 * dn * w;
      pp.eigenvalue_role = "Z";
      pp.gauge = GaugeFactor{l + 1.0, -w / 2.0, 0.0, 0.0, 0.0, false};
      pp.energy = (2.0 * dn + 2.0 * l + 3.0) * w;
      break;
    }
    case ModelId::hooke_magnetic: {
      const double w0 = params.require("omega_0");
      const double wl = params.require("omega_L");
      if (w0 < 0.0 || wl < 0.0) throw InvalidParamsError("omega_0 and omega_L must be >= 0");
      const int m = params.require_int("m");
      const double am = std::abs(m);
      const double wt = 0.5 * std::hypot(wl, w0);
      if (!(wt > 0.0)) throw InvalidParamsError("omega_0 and omega_L cannot both be 0");
      pp.h.p2.add_term(0, 1.0);
      pp.h.p1.add_term(1, -2.0 * wt);
      pp.h.p1.add_term(-1, 2.0 * am + 1.0);
      pp.multiplier = StackelMultiplier(1);
      pp.stackel_energy = -2.0 * dn * wt;
      pp.eigenvalue_role = "Z";
      pp.gauge = GaugeFactor{am + 0.5, -wt / 2.0, 0.0, 0.0, 0.0, false};
      pp.energy = m * wl + 2.0 * (dn + am + 1.0) * wt;
      pp.derived["omega_tilde_r"] = wt;
      break;
    }
    case ModelId::electrons_sphere: {
      const double g = require_positive(params, "gamma");
      const double de = require_positive(params, "delta");
      pp.h.p2.add_term(2, 1.0);
      pp.h.p2.add_term(0, -1.0);
      pp.h.p1.add_term(1, de);
      pp.h.p1.add_term(-1, -1.0 / g);
      pp.multiplier = StackelMultiplier(1);
      pp.stackel_energy = dn * (dn - 1.0 + de);  // 4R^2 E
      pp.eigenvalue_role = "-2R";
      pp.gauge = GaugeFactor{};  // Psi(z) = y(z) directly
      if (n == 0) {
        pp.energy = 0.0;
      } else if (n == 1) {
        pp.energy = g;
      } else if (n == 2) {
        pp.energy = g * (1.0 + de) / (3.0 + 2.0 * de + g * (2.0 + de));
      } else {
        // No printed closed form past n=2: use the largest admissible radius.
        pp.energy = dn * (dn - 1.0 + de) / (4.0 * sphere_radius_squared_largest(params, n));
      }
      break;
    }
    case ModelId::inverse_quartic: {
      const double a = params.require("a");
      const double c = params.require("c");
      const double d = require_positive(params, "d");
      const double s = std::sqrt(2.0 * d);
      const double kap = 1.0 + c / s;
      const double denom = dn + 1.0 + c / s;
      if (std::abs(denom) < 1e-12)
        throw InvalidParamsError("n + 1 + c/sqrt(2d) vanishes; B is undefined");
      const double B = a / denom;
      pp.h.p2.add_term(0, 1.0);
      pp.h.p1.add_term(0, 2.0 * B);
      pp.h.p1.add_term(-1, 2.0 * kap);
      pp.h.p1.add_term(-2, 2.0 * s);
      pp.h.p0.add_term(-1, 2.0 * (kap * B - a));
      pp.multiplier = StackelMultiplier(2);
      pp.stackel_energy = 0.0;  // -(B^2 + 2E) with E = -B^2/2
      pp.eigenvalue_role = "alpha";
      pp.gauge = GaugeFactor{kap, 0.0, B, -s, 0.0, false};
      pp.energy = -0.5 * B * B;
      pp.derived["B"] = B;
      pp.derived["sqrt_2d"] = s;
      break;
    }
    case ModelId::inverse_sextic: {
      const double w = require_positive(params, "omega");
      const double c = params.require("c");
      const double d = require_positive(params, "d");
      const int l = params.require_int("l");
      if (l < 0) throw InvalidParamsError("l must be >= 0");
      const double s = std::sqrt(2.0 * d);
      pp.h.p2.add_term(1, 1.0);
      pp.h.p1.add_term(1, -w);
      pp.h.p1.add_term(0, c / s + 2.0);
      pp.h.p1.add_term(-1, s);
      pp.multiplier = StackelMultiplier(1);
      pp.stackel_energy = -dn * w;
      pp.eigenvalue_role = "alpha";
      pp.gauge = GaugeFactor{1.5 + c / s, -w / 2.0, 0.0, 0.0, -s / 2.0, true};
      pp.energy = (2.0 * dn + 2.0 + c / s) * w;
      pp.derived["sqrt_2d"] = s;
      break;
    }
    case ModelId::newtonian_cosmology: {
      const double b2 = params.require("B2");
      const double b3 = params.require("B3");
      const double b5 = params.require("B5");
      if (!(b3 < 0.0)) throw InvalidParamsError("B3 must be < 0");
      if (1.0 - 4.0 * b5 < 0.0)
        throw InvalidParamsError("B5 must satisfy 1 - 4 B5 >= 0 for a real gauge exponent");
      const double tau = std::pow(-b3, 0.25);
      const double g5 = std::sqrt(1.0 - 4.0 * b5);
      const double beta = b2 / (tau * tau * tau);
      pp.h.p2.add_term(0, 1.0);
      pp.h.p1.add_term(1, -2.0);
      pp.h.p1.add_term(0, beta);
      pp.h.p1.add_term(-1, 1.0 - g5);
      pp.multiplier = StackelMultiplier(1);
      pp.stackel_energy = -2.0 * dn;
      pp.eigenvalue_role = "alpha";
      pp.gauge = GaugeFactor{(1.0 - g5) / 2.0, -0.5, beta / 2.0, 0.0, 0.0, false};
      const double tau2 = tau * tau;
      const double b1 = tau2 * (2.0 * dn + 2.0 - g5) - b2 * b2 / (4.0 * tau2 * tau2);
      pp.energy = 0.5 * tau2 * (2.0 * (dn + 1.0) - g5) - b2 * b2 / (8.0 * tau2 * tau2);
      pp.derived["tau"] = tau;
      pp.derived["B1"] = b1;
      break;
    }
  }

  pp.hprime = stackel_transform(pp.h, pp.multiplier, pp.stackel_energy, pp.eigenvalue_role)
                  .hprime;
  pp.certificate = check_algebraizable(pp.hprime, n);
  if (!pp.certificate.passed)
    throw NotAlgebraizableError("catalog model '" + to_string(model) +
                                "' failed its own closure conditions at n=" +
                                std::to_string(n));
  return pp;
}

double energy(ModelId model, const ModelParams& params, int n) {
  return build(model, params, n).energy;
}

namespace {

double sphere_radius_squared_largest(const ModelParams& params, int n) {
  // Rebuild just the Heun operator; avoids recursion through build().
  const double g = require_positive(params, "gamma");
  const double de = require_positive(params, "delta");
  LaurentOperator h;
  h.p2.add_term(2, 1.0);
  h.p2.add_term(0, -1.0);
  h.p1.add_term(1, de);
  h.p1.add_term(-1, -1.0 / g);
  const double dn = n;
  const HeunOperator hp =
      stackel_transform(h, StackelMultiplier(1), dn * (dn - 1.0 + de)).hprime;
  const SpectralSolution sol = eigensolve(build_jacobi(hp, n));
  double best = 0.0;
  for (size_t i = 0; i < sol.eigenvalues.size(); ++i) {
    if (!sol.is_real(i)) continue;
    const double R = -sol.eigenvalues[i].real() / 2.0;
    best = std::max(best, R);
  }
  if (!(best > 0.0))
    throw InvalidParamsError("no admissible (positive) sphere radius at n=" +
                             std::to_string(n));
  return best * best;
}

}  // namespace

Interpretation interpret_eigenvalue(ModelId model, double lambda, const ModelParams& params,
                                    int n) {
  Interpretation out;
  const double dn = n;
  switch (model) {
    case ModelId::hydrogen2d:
    case ModelId::hooke_oscillator:
    case ModelId::hooke_magnetic: {
      out.name = "Z";
      out.value = lambda;
      out.outputs["Z"] = lambda;
      if (std::abs(lambda) <= 1e-9 * std::max(1.0, std::abs(lambda)))
        out.flags.push_back("coupling vanishes");
      break;
    }
    case ModelId::electrons_sphere: {
      const double de = params.require("delta");
      const double R = -lambda / 2.0;
      out.name = "R";
      out.value = R;
      out.outputs["R"] = R;
      if (R <= 1e-12) {
        out.admissible = false;
        out.flags.push_back("nonphysical");
        out.flags.push_back(std::abs(R) <= 1e-12 ? "radius vanishes"
                                                 : "radius must be positive");
      } else {
        out.outputs["E"] = dn * (dn - 1.0 + de) / (4.0 * R * R);
      }
      break;
    }
    case ModelId::inverse_quartic: {
      const double a = params.require("a");
      const double c = params.require("c");
      const double d = params.require("d");
      const double s = std::sqrt(2.0 * d);
      const double B = a / (dn + 1.0 + c / s);
      const double b = 0.5 * (lambda + (c / s) * (1.0 + c / s)) + B * s;
      out.name = "b";
      out.value = b;
      out.outputs["b"] = b;
      out.outputs["B"] = B;
      out.outputs["E"] = -0.5 * B * B;
      break;
    }
    case ModelId::inverse_sextic: {
      const double w = params.require("omega");
      const double c = params.require("c");
      const double d = params.require("d");
      const int l = params.require_int("l");
      const double s = std::sqrt(2.0 * d);
      const double ll1 = 4.0 * lambda + c * c / (2.0 * d) + 2.0 * c / s + 0.75 - 2.0 * w * s;
      out.name = "l(l+1)";
      out.value = ll1;
      out.outputs["ll1"] = ll1;
      if (ll1 >= -0.25) out.outputs["l_implied"] = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * ll1));
      if (std::abs(ll1 - l * (l + 1.0)) > 1e-9 * std::max(1.0, std::abs(ll1)))
        out.flags.push_back("constrained l(l+1) differs from the supplied l");
      break;
    }
    case ModelId::newtonian_cosmology: {
      const double b2 = params.require("B2");
      const double b3 = params.require("B3");
      const double b5 = params.require("B5");
      const double tau = std::pow(-b3, 0.25);
      const double g5 = std::sqrt(1.0 - 4.0 * b5);
      const double tau2 = tau * tau;
      const double b4 = -(2.0 * tau2 * tau * lambda + b2 * (1.0 - g5)) / (2.0 * tau2);
      out.name = "B4";
      out.value = b4;
      out.outputs["B4"] = b4;
      out.outputs["B1"] = tau2 * (2.0 * dn + 2.0 - g5) - b2 * b2 / (4.0 * tau2 * tau2);
      break;
    }
  }
  return out;
}

double GaugeFactor::value(double r) const {
  return std::pow(r, mu_ln) * std::exp(q2 * r * r + q1 * r + q_m1 / r + q_m2 / (r * r));
}

double GaugeFactor::log_deriv(double r) const {
  return mu_ln / r + 2.0 * q2 * r + q1 - q_m1 / (r * r) - 2.0 * q_m2 / (r * r * r);
}

double GaugeFactor::log_deriv_prime(double r) const {
  const double r2 = r * r;
  return -mu_ln / r2 + 2.0 * q2 + 2.0 * q_m1 / (r2 * r) + 6.0 * q_m2 / (r2 * r2);
}

double Wavefunction::value(double r) const {
  if (r <= 0.0) throw EvaluationOutOfDomainError("wavefunction requires r > 0");
  const double s = gauge.square_substitution ? r * r : r;
  return gauge.value(r) * y.eval(s);
}

double Wavefunction::deriv1(double r) const {
  if (r <= 0.0) throw EvaluationOutOfDomainError("wavefunction requires r > 0");
  const double s = gauge.square_substitution ? r * r : r;
  const double sp = gauge.square_substitution ? 2.0 * r : 1.0;
  const double L = gauge.log_deriv(r);
  return gauge.value(r) * (L * y.eval(s) + y.derivative().eval(s) * sp);
}

double Wavefunction::deriv2(double r) const {
  if (r <= 0.0) throw EvaluationOutOfDomainError("wavefunction requires r > 0");
  const double s = gauge.square_substitution ? r * r : r;
  const double sp = gauge.square_substitution ? 2.0 * r : 1.0;
  const double spp = gauge.square_substitution ? 2.0 : 0.0;
  const double L = gauge.log_deriv(r);
  const double Lp = gauge.log_deriv_prime(r);
  const Polynomial y1 = y.derivative();
  const Polynomial y2 = y1.derivative();
  return gauge.value(r) * ((L * L + Lp) * y.eval(s) + 2.0 * L * y1.eval(s) * sp +
                           y2.eval(s) * sp * sp + y1.eval(s) * spp);
}

Wavefunction wavefunction(ModelId model, const ModelParams& params, const Polynomial& y,
                          int n) {
  return Wavefunction{build(model, params, n).gauge, y};
}

std::map<std::string, double> newtonian_b_params(double E, double A_d, double A_q, double A_v,
                                                 double A_m, double A_r, double G, double mu,
                                                 double hbar, double Lambda) {
  const double pi = std::numbers::pi;
  const double common = 8.0 * pi * G * mu * mu / (3.0 * hbar * hbar);
  std::map<std::string, double> b;
  b["B1"] = 2.0 * mu * E / (hbar * hbar) + common * A_d;
  b["B2"] = common * A_q;
  b["B3"] = common * (A_v + Lambda / (8.0 * pi * G));
  b["B4"] = common * A_m;
  b["B5"] = common * A_r;
  return b;
}

}  // namespace qes
