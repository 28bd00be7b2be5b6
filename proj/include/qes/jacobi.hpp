#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qes/matrix.hpp"
#include "qes/operators.hpp"
#include "qes/polynomial.hpp"

namespace qes {

/// (n+1) x (n+1) banded matrix of an algebraizable Heun operator on the
/// monomial basis {1, x, ..., x^n}. Column k holds the image of x^k:
///   entry(k-2,k) = k(k-1)a0
///   entry(k-1,k) = k[(k-1)a1 + b0]
///   entry(k,k)   = c0 + k b1 + k(k-1)a2
///   entry(k+1,k) = (k-n)[(n+k-1)a3 + b2]
///   entry(k+2,k) = (n-k)(n-k-1)a4
struct JacobiMatrix {
  int n = 0;
  std::vector<double> sub2, sub1, diag, super1, super2;  // offsets +2..-2
  Matrix dense;
  // Largest raw sub-block entry past row n (zero when the closure
  // conditions hold exactly).
  double closure_leak = 0.0;

  int size() const { return n + 1; }
  double entry(int i, int k) const { return dense(i, k); }
};

constexpr double kDefaultClosureTol = 1e-9;

/// Throws ClosureViolationError when the raw entries (n+1,n), (n+2,n),
/// (n+1,n-1) exceed tol relative to the coefficient scale.
JacobiMatrix build_jacobi(const HeunOperator& h, int n, double tol = kDefaultClosureTol);

struct EigenpairFlags {
  bool physical = true;
  bool degenerate = false;
  std::vector<std::string> reasons;
};

/// Full spectrum of the Jacobi matrix. Eigenvalues are sorted ascending by
/// real part, ties by imaginary part; eigenvectors are converted to monic
/// polynomial coefficient lists. Complex eigenvalues are kept and flagged.
struct SpectralSolution {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<std::vector<std::complex<double>>> eigen_polys;  // ascending powers
  std::vector<EigenpairFlags> flags;

  bool is_real(size_t i) const { return eigenvalues[i].imag() == 0.0; }
  /// Real polynomial view of eigenpair i; only valid for real eigenvalues.
  Polynomial real_poly(size_t i) const;
};

/// Dense QR eigensolve; dimensions above 64 are rejected.
SpectralSolution eigensolve(const JacobiMatrix& m);

/// Monic characteristic polynomial by the Faddeev-LeVerrier recursion.
Polynomial characteristic_poly(const JacobiMatrix& m);

/// y(x) = sum v_k x^k, normalized monic in its highest nonzero coefficient.
Polynomial eigenvector_to_polynomial(const std::vector<double>& v);
std::vector<std::complex<double>> eigenvector_to_monic(
    const std::vector<std::complex<double>>& v);

}  // namespace qes
