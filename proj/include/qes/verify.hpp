#pragma once

#include <string>
#include <vector>

#include "qes/models.hpp"
#include "qes/polynomial.hpp"

namespace qes {

/// Sample grid for pointwise residual evaluation and the FD oracle.
struct Grid {
  enum class Spacing { uniform, log_spaced };
  double r_min = 0.05;
  double r_max = 12.0;
  int points = 1000;
  Spacing spacing = Spacing::log_spaced;

  std::vector<double> sample() const;
  /// Log-spaced 1000-point residual grid adapted to the model's domain.
  static Grid residual_default(ModelId model);
  /// Uniform 20000-point grid for the finite-difference oracle.
  static Grid fd_default(ModelId model);
};

struct ResidualReport {
  double max_rel_residual = 0.0;
  double argmax_r = 0.0;
  int samples = 0;
  double tol = 0.0;
  bool pass = false;
};

/// Evaluates the model's original radial equation on the reconstructed
/// wavefunction (constrained parameter substituted from the eigenvalue,
/// energy from the closed form) and reports the worst relative residual.
ResidualReport ode_residual(ModelId model, const ModelParams& params, int n, double lambda,
                            const Polynomial& y, const Grid& grid, double tol = 1e-8);

/// Checks both sides of the duality at sample points: H'y = lambda y and
/// the original (H - lambda U^{-mu}) y = E_stackel y.
ResidualReport duality_check(ModelId model, const ModelParams& params, int n, double lambda,
                             const Polynomial& y, int sample_points = 100, double tol = 1e-10);

/// Whether the tridiagonal FD oracle applies (radial Schroedinger form).
bool fd_supported(ModelId model);

/// Lowest k eigenvalues of the 3-point discretization of the radial
/// operator, converted to the model's energy convention. The constrained
/// coupling is taken from params ("Z" for the Coulomb-type models, "ll1"
/// for the inverse sextic).
std::vector<double> fd_spectrum(ModelId model, const ModelParams& params, const Grid& grid,
                                int k);

}  // namespace qes
