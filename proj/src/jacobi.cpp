#include "qes/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qes/errors.hpp"

namespace qes {

JacobiMatrix build_jacobi(const HeunOperator& h, int n, double tol) {
  if (n < 0) throw InvalidParamsError("representation label n must be >= 0");
  const double dn = n;
  JacobiMatrix m;
  m.n = n;
  m.dense = Matrix(n + 1, n + 1);
  m.sub2.assign(std::max(n - 1, 0), 0.0);
  m.sub1.assign(std::max(n, 0), 0.0);
  m.diag.assign(n + 1, 0.0);
  m.super1.assign(std::max(n, 0), 0.0);
  m.super2.assign(std::max(n - 1, 0), 0.0);

  for (int k = 0; k <= n; ++k) {
    const double dk = k;
    m.diag[static_cast<size_t>(k)] = h.c[0] + dk * h.b[1] + dk * (dk - 1.0) * h.a[2];
    if (k >= 1) m.super1[static_cast<size_t>(k - 1)] = dk * ((dk - 1.0) * h.a[1] + h.b[0]);
    if (k >= 2) m.super2[static_cast<size_t>(k - 2)] = dk * (dk - 1.0) * h.a[0];
    if (k + 1 <= n)
      m.sub1[static_cast<size_t>(k)] = (dk - dn) * ((dn + dk - 1.0) * h.a[3] + h.b[2]);
    if (k + 2 <= n)
      m.sub2[static_cast<size_t>(k)] = (dn - dk) * (dn - dk - 1.0) * h.a[4];
  }
  for (int k = 0; k <= n; ++k) {
    m.dense(k, k) = m.diag[static_cast<size_t>(k)];
    if (k >= 1) m.dense(k - 1, k) = m.super1[static_cast<size_t>(k - 1)];
    if (k >= 2) m.dense(k - 2, k) = m.super2[static_cast<size_t>(k - 2)];
    if (k + 1 <= n) m.dense(k + 1, k) = m.sub1[static_cast<size_t>(k)];
    if (k + 2 <= n) m.dense(k + 2, k) = m.sub2[static_cast<size_t>(k)];
  }

  // Raw degree-raising entries just past row n; they vanish exactly when
  // the closure conditions hold.
  auto raise1 = [&](double dk) { return dk * (dk - 1.0) * h.a[3] + dk * h.b[2] + h.c[1]; };
  auto raise2 = [&](double dk) { return dk * (dk - 1.0) * h.a[4] + dk * h.b[3] + h.c[2]; };
  double leak = std::abs(raise1(dn));
  leak = std::max(leak, std::abs(raise2(dn)));
  if (n >= 1) leak = std::max(leak, std::abs(raise2(dn - 1.0)));
  m.closure_leak = leak;

  const double scale = std::max(h.max_abs_coeff(), 1.0);
  if (leak > tol * scale)
    throw ClosureViolationError("Jacobi sub-block leak " + std::to_string(leak) +
                                " exceeds tolerance at n=" + std::to_string(n));
  return m;
}

Polynomial SpectralSolution::real_poly(size_t i) const {
  std::vector<double> c;
  c.reserve(eigen_polys[i].size());
  for (const auto& z : eigen_polys[i]) c.push_back(z.real());
  return Polynomial(std::move(c));
}

std::vector<std::complex<double>> eigenvector_to_monic(
    const std::vector<std::complex<double>>& v) {
  double maxabs = 0.0;
  for (const auto& z : v) maxabs = std::max(maxabs, std::abs(z));
  if (maxabs == 0.0) throw ZeroVectorError("eigenvector is identically zero");
  size_t lead = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-12 * maxabs) lead = i;
  std::vector<std::complex<double>> out(v.begin(), v.begin() + static_cast<long>(lead) + 1);
  const std::complex<double> pivot = out.back();
  for (auto& z : out) z /= pivot;
  out.back() = 1.0;
  return out;
}

Polynomial eigenvector_to_polynomial(const std::vector<double>& v) {
  std::vector<std::complex<double>> cv(v.begin(), v.end());
  const auto monic = eigenvector_to_monic(cv);
  std::vector<double> c;
  c.reserve(monic.size());
  for (const auto& z : monic) c.push_back(z.real());
  return Polynomial(std::move(c));
}

SpectralSolution eigensolve(const JacobiMatrix& m) {
  const int size = m.size();
  if (size > 64)
    throw InvalidParamsError("eigensolve supports dimensions up to 64, got " +
                             std::to_string(size));
  const long cap = 100L * static_cast<long>(size) * static_cast<long>(size);
  EigenDecomposition ed = eig_dense(m.dense, cap);

  std::vector<size_t> order(ed.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    if (ed.values[i].real() != ed.values[j].real())
      return ed.values[i].real() < ed.values[j].real();
    return ed.values[i].imag() < ed.values[j].imag();
  });

  SpectralSolution sol;
  sol.eigenvalues.reserve(order.size());
  sol.eigen_polys.reserve(order.size());
  sol.flags.resize(order.size());
  for (size_t idx : order) {
    sol.eigenvalues.push_back(ed.values[idx]);
    sol.eigen_polys.push_back(eigenvector_to_monic(ed.vectors[idx]));
  }

  double vscale = 0.0;
  for (const auto& z : sol.eigenvalues) vscale = std::max(vscale, std::abs(z));
  const double degen_tol = 1e-8 * std::max(vscale, 1.0);

  for (size_t i = 0; i < sol.eigenvalues.size(); ++i) {
    if (sol.eigenvalues[i].imag() != 0.0) {
      sol.flags[i].physical = false;
      sol.flags[i].reasons.push_back("complex");
    }
  }

  // Group numerically coincident eigenvalues and re-orthogonalize their
  // vectors so degenerate subspaces come out with a stable basis.
  size_t i = 0;
  while (i < sol.eigenvalues.size()) {
    size_t j = i + 1;
    while (j < sol.eigenvalues.size() &&
           std::abs(sol.eigenvalues[j] - sol.eigenvalues[i]) <= degen_tol)
      ++j;
    if (j - i > 1) {
      for (size_t g = i; g < j; ++g) sol.flags[g].degenerate = true;
      for (size_t g = i + 1; g < j; ++g) {
        auto& vg = sol.eigen_polys[g];
        for (size_t p = i; p < g; ++p) {
          const auto& vp = sol.eigen_polys[p];
          std::complex<double> dot = 0.0, nrm = 0.0;
          const size_t len = std::min(vg.size(), vp.size());
          for (size_t t = 0; t < len; ++t) dot += std::conj(vp[t]) * vg[t];
          for (const auto& z : vp) nrm += std::conj(z) * z;
          if (std::abs(nrm) == 0.0) continue;
          const std::complex<double> coef = dot / nrm;
          std::vector<std::complex<double>> tmp(std::max(vg.size(), vp.size()), 0.0);
          for (size_t t = 0; t < vg.size(); ++t) tmp[t] = vg[t];
          for (size_t t = 0; t < vp.size(); ++t) tmp[t] -= coef * vp[t];
          double mx = 0.0;
          for (const auto& z : tmp) mx = std::max(mx, std::abs(z));
          if (mx > 1e-10) vg = eigenvector_to_monic(tmp);
        }
      }
    }
    i = j;
  }
  return sol;
}

Polynomial characteristic_poly(const JacobiMatrix& m) {
  const int nn = m.size();
  std::vector<double> coef(static_cast<size_t>(nn) + 1, 0.0);
  coef[static_cast<size_t>(nn)] = 1.0;
  Matrix mk = m.dense;
  double ck = 0.0;
  for (int k = 1; k <= nn; ++k) {
    if (k > 1) {
      Matrix shifted = mk;
      for (int i = 0; i < nn; ++i) shifted(i, i) += ck;
      mk = m.dense * shifted;
    }
    ck = -mk.trace() / k;
    coef[static_cast<size_t>(nn - k)] = ck;
  }
  return Polynomial(std::move(coef));
}

}  // namespace qes
