#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qes/operators.hpp"
#include "qes/polynomial.hpp"
#include "qes/sl2.hpp"
#include "qes/stackel.hpp"

namespace qes {

enum class ModelId {
  hydrogen2d,
  hooke_oscillator,
  hooke_magnetic,
  electrons_sphere,
  inverse_quartic,
  inverse_sextic,
  newtonian_cosmology,
};

const std::vector<ModelId>& all_models();
std::string to_string(ModelId id);
std::optional<ModelId> model_from_string(const std::string& name);

/// Named scalar parameters; values are validated per model at build time.
class ModelParams {
 public:
  ModelParams() = default;
  explicit ModelParams(std::map<std::string, double> values) : values_(std::move(values)) {}

  void set(const std::string& name, double v) { values_[name] = v; }
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  double require(const std::string& name) const;
  int require_int(const std::string& name) const;
  double get_or(const std::string& name, double fallback) const;
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct ParamSpec {
  std::string name;
  std::string constraint;  // human-readable domain note
  bool required = true;
};

std::vector<ParamSpec> model_schema(ModelId id);

/// Multiplicative factor and variable substitution mapping the polynomial
/// factor y back to the physical radial function:
///   psi(r) = r^mu_ln * exp(q2 r^2 + q1 r + q_m1/r + q_m2/r^2) * y(s(r)),
/// s(r) = r^2 when square_substitution, else r.
struct GaugeFactor {
  double mu_ln = 0, q2 = 0, q1 = 0, q_m1 = 0, q_m2 = 0;
  bool square_substitution = false;

  double value(double r) const;
  double log_deriv(double r) const;        // G'/G
  double log_deriv_prime(double r) const;  // (G'/G)'
  /// True when the exponent decays in both limits relevant to the catalog.
  bool normalizable_signs() const { return q2 <= 0.0 && q_m2 <= 0.0; }
};

/// Evaluable wavefunction with closed-form first and second derivatives.
struct Wavefunction {
  GaugeFactor gauge;
  Polynomial y;

  double value(double r) const;
  double deriv1(double r) const;
  double deriv2(double r) const;
};

/// Physical reading of one Jacobi eigenvalue.
struct Interpretation {
  std::string name;  // "Z", "R", "b", "l(l+1)", "B4"
  double value = 0.0;
  bool admissible = true;
  std::vector<std::string> flags;
  std::map<std::string, double> outputs;  // constrained parameters, per-pair energy
};

/// A catalog model compiled against a fixed n: the pre-transform operator,
/// the multiplier and substituted energy, the resulting Heun operator with
/// its certificate, the gauge factor, and role bookkeeping.
struct PreparedProblem {
  ModelId model{};
  ModelParams params;
  int n = 0;
  LaurentOperator h;
  StackelMultiplier multiplier{0};
  double stackel_energy = 0.0;
  HeunOperator hprime;
  AlgebraizationCertificate certificate;
  GaugeFactor gauge;
  std::string eigenvalue_role;
  double energy = 0.0;
  std::map<std::string, double> derived;  // tau, omega_tilde_r, B, B1, ...
};

PreparedProblem build(ModelId model, const ModelParams& params, int n);
double energy(ModelId model, const ModelParams& params, int n);
Interpretation interpret_eigenvalue(ModelId model, double lambda, const ModelParams& params,
                                    int n);
Wavefunction wavefunction(ModelId model, const ModelParams& params, const Polynomial& y,
                          int n);

/// B1..B5 from the physical constants of the cosmological potential
/// (optional converter; energy/E enters B1).
std::map<std::string, double> newtonian_b_params(double E, double A_d, double A_q, double A_v,
                                                 double A_m, double A_r, double G, double mu,
                                                 double hbar, double Lambda);

}  // namespace qes
