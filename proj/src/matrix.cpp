#include "qes/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qes/errors.hpp"

namespace qes {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix r(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < other.cols_; ++j) r(i, j) += aik * other(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix r = *this;
  for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += other.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix r = *this;
  for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= other.data_[i];
  return r;
}

Matrix Matrix::operator*(double s) const {
  Matrix r = *this;
  for (double& v : r.data_) v *= s;
  return r;
}

namespace {

// Complex scalar division c = a / b without overflow in the squares.
void cdiv(double xr, double xi, double yr, double yi, double& zr, double& zi) {
  if (std::abs(yr) > std::abs(yi)) {
    const double r = yi / yr;
    const double d = yr + r * yi;
    zr = (xr + r * xi) / d;
    zi = (xi - r * xr) / d;
  } else {
    const double r = yr / yi;
    const double d = yi + r * yr;
    zr = (r * xr + xi) / d;
    zi = (r * xi - xr) / d;
  }
}

// Householder reduction to upper Hessenberg form, accumulating the
// orthogonal similarity in v.
void orthes(int n, Matrix& h, Matrix& v) {
  const int low = 0;
  const int high = n - 1;
  std::vector<double> ort(static_cast<size_t>(n), 0.0);

  for (int m = low + 1; m <= high - 1; ++m) {
    double scale = 0.0;
    for (int i = m; i <= high; ++i) scale += std::abs(h(i, m - 1));
    if (scale == 0.0) continue;

    double hh = 0.0;
    for (int i = high; i >= m; --i) {
      ort[i] = h(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;

    for (int j = m; j < n; ++j) {
      double f = 0.0;
      for (int i = high; i >= m; --i) f += ort[i] * h(i, j);
      f /= hh;
      for (int i = m; i <= high; ++i) h(i, j) -= f * ort[i];
    }
    for (int i = 0; i <= high; ++i) {
      double f = 0.0;
      for (int j = high; j >= m; --j) f += ort[j] * h(i, j);
      f /= hh;
      for (int j = m; j <= high; ++j) h(i, j) -= f * ort[j];
    }
    ort[m] = scale * ort[m];
    h(m, m - 1) = scale * g;
  }

  v = Matrix::identity(n);
  for (int m = high - 1; m >= low + 1; --m) {
    if (h(m, m - 1) == 0.0) continue;
    for (int i = m + 1; i <= high; ++i) ort[i] = h(i, m - 1);
    for (int j = m; j <= high; ++j) {
      double g = 0.0;
      for (int i = m; i <= high; ++i) g += ort[i] * v(i, j);
      g = (g / ort[m]) / h(m, m - 1);
      for (int i = m; i <= high; ++i) v(i, j) += g * ort[i];
    }
  }
}

// Francis double-shift QR on the Hessenberg matrix, then back-substitution
// for the eigenvectors of the Schur form and transformation back.
void hqr2(int nn, Matrix& h, Matrix& v, std::vector<double>& d, std::vector<double>& e,
          long max_iterations) {
  int n = nn - 1;
  const int low = 0;
  const int high = nn - 1;
  const double eps = std::ldexp(1.0, -52);
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, t, w, x, y;
  long total_iter = 0;

  double norm = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));

  int iter = 0;
  while (n >= low) {
    int l = n;
    while (l > low) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) < eps * s) break;
      --l;
    }

    if (l == n) {
      h(n, n) += exshift;
      d[static_cast<size_t>(n)] = h(n, n);
      e[static_cast<size_t>(n)] = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= 0) {
        z = (p >= 0) ? p + z : p - z;
        d[static_cast<size_t>(n - 1)] = x + z;
        d[static_cast<size_t>(n)] = d[static_cast<size_t>(n - 1)];
        if (z != 0.0) d[static_cast<size_t>(n)] = x - w / z;
        e[static_cast<size_t>(n - 1)] = 0.0;
        e[static_cast<size_t>(n)] = 0.0;
        x = h(n, n - 1);
        s = std::abs(x) + std::abs(z);
        p = x / s;
        q = z / s;
        r = std::sqrt(p * p + q * q);
        p /= r;
        q /= r;
        for (int j = n - 1; j < nn; ++j) {
          z = h(n - 1, j);
          h(n - 1, j) = q * z + p * h(n, j);
          h(n, j) = q * h(n, j) - p * z;
        }
        for (int i = 0; i <= n; ++i) {
          z = h(i, n - 1);
          h(i, n - 1) = q * z + p * h(i, n);
          h(i, n) = q * h(i, n) - p * z;
        }
        for (int i = low; i <= high; ++i) {
          z = v(i, n - 1);
          v(i, n - 1) = q * z + p * v(i, n);
          v(i, n) = q * v(i, n) - p * z;
        }
      } else {
        d[static_cast<size_t>(n - 1)] = x + p;
        d[static_cast<size_t>(n)] = x + p;
        e[static_cast<size_t>(n - 1)] = z;
        e[static_cast<size_t>(n)] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      x = h(n, n);
      y = 0.0;
      w = 0.0;
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }

      // exceptional shifts
      if (iter == 10) {
        exshift += x;
        for (int i = low; i <= n; ++i) h(i, i) -= x;
        s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      if (iter == 30) {
        s = (y - x) / 2.0;
        s = s * s + w;
        if (s > 0) {
          s = std::sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / 2.0 + s);
          for (int i = low; i <= n; ++i) h(i, i) -= s;
          exshift += s;
          x = y = w = 0.964;
        }
      }

      ++iter;
      if (++total_iter > max_iterations)
        throw NonConvergenceError("QR iteration exceeded " + std::to_string(max_iterations) +
                                  " sweeps");

      int m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) *
                   (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)))))
          break;
        --m;
      }
      for (int i = m + 2; i <= n; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s == 0.0) continue;
        if (k != m)
          h(k, k - 1) = -s * x;
        else if (l != m)
          h(k, k - 1) = -h(k, k - 1);
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;

        for (int j = k; j < nn; ++j) {
          p = h(k, j) + q * h(k + 1, j);
          if (notlast) {
            p += r * h(k + 2, j);
            h(k + 2, j) -= p * z;
          }
          h(k, j) -= p * x;
          h(k + 1, j) -= p * y;
        }
        for (int i = 0; i <= std::min(n, k + 3); ++i) {
          p = x * h(i, k) + y * h(i, k + 1);
          if (notlast) {
            p += z * h(i, k + 2);
            h(i, k + 2) -= p * r;
          }
          h(i, k) -= p;
          h(i, k + 1) -= p * q;
        }
        for (int i = low; i <= high; ++i) {
          p = x * v(i, k) + y * v(i, k + 1);
          if (notlast) {
            p += z * v(i, k + 2);
            v(i, k + 2) -= p * r;
          }
          v(i, k) -= p;
          v(i, k + 1) -= p * q;
        }
      }
    }
  }

  if (norm == 0.0) return;

  // Back-substitute the eigenvectors of the quasi-triangular form.
  for (n = nn - 1; n >= 0; --n) {
    p = d[static_cast<size_t>(n)];
    q = e[static_cast<size_t>(n)];

    if (q == 0.0) {
      int l = n;
      h(n, n) = 1.0;
      for (int i = n - 1; i >= 0; --i) {
        w = h(i, i) - p;
        r = 0.0;
        for (int j = l; j <= n; ++j) r += h(i, j) * h(j, n);
        if (e[static_cast<size_t>(i)] < 0.0) {
          z = w;
          s = r;
        } else {
          l = i;
          if (e[static_cast<size_t>(i)] == 0.0) {
            h(i, n) = (w != 0.0) ? -r / w : -r / (eps * norm);
          } else {
            x = h(i, i + 1);
            y = h(i + 1, i);
            q = (d[static_cast<size_t>(i)] - p) * (d[static_cast<size_t>(i)] - p) +
                e[static_cast<size_t>(i)] * e[static_cast<size_t>(i)];
            t = (x * s - z * r) / q;
            h(i, n) = t;
            h(i + 1, n) =
                (std::abs(x) > std::abs(z)) ? (-r - w * t) / x : (-s - y * t) / z;
          }
          t = std::abs(h(i, n));
          if ((eps * t) * t > 1)
            for (int j = i; j <= n; ++j) h(j, n) /= t;
        }
      }
    } else if (q < 0.0) {
      int l = n - 1;
      if (std::abs(h(n, n - 1)) > std::abs(h(n - 1, n))) {
        h(n - 1, n - 1) = q / h(n, n - 1);
        h(n - 1, n) = -(h(n, n) - p) / h(n, n - 1);
      } else {
        double zr, zi;
        cdiv(0.0, -h(n - 1, n), h(n - 1, n - 1) - p, q, zr, zi);
        h(n - 1, n - 1) = zr;
        h(n - 1, n) = zi;
      }
      h(n, n - 1) = 0.0;
      h(n, n) = 1.0;
      for (int i = n - 2; i >= 0; --i) {
        double ra = 0.0, sa = 0.0, vr, vi;
        for (int j = l; j <= n; ++j) {
          ra += h(i, j) * h(j, n - 1);
          sa += h(i, j) * h(j, n);
        }
        w = h(i, i) - p;
        if (e[static_cast<size_t>(i)] < 0.0) {
          z = w;
          r = ra;
          s = sa;
        } else {
          l = i;
          if (e[static_cast<size_t>(i)] == 0.0) {
            double zr, zi;
            cdiv(-ra, -sa, w, q, zr, zi);
            h(i, n - 1) = zr;
            h(i, n) = zi;
          } else {
            x = h(i, i + 1);
            y = h(i + 1, i);
            vr = (d[static_cast<size_t>(i)] - p) * (d[static_cast<size_t>(i)] - p) +
                 e[static_cast<size_t>(i)] * e[static_cast<size_t>(i)] - q * q;
            vi = (d[static_cast<size_t>(i)] - p) * 2.0 * q;
            if (vr == 0.0 && vi == 0.0)
              vr = eps * norm *
                   (std::abs(w) + std::abs(q) + std::abs(x) + std::abs(y) + std::abs(z));
            double zr, zi;
            cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi, zr, zi);
            h(i, n - 1) = zr;
            h(i, n) = zi;
            if (std::abs(x) > (std::abs(z) + std::abs(q))) {
              h(i + 1, n - 1) = (-ra - w * h(i, n - 1) + q * h(i, n)) / x;
              h(i + 1, n) = (-sa - w * h(i, n) - q * h(i, n - 1)) / x;
            } else {
              cdiv(-r - y * h(i, n - 1), -s - y * h(i, n), z, q, zr, zi);
              h(i + 1, n - 1) = zr;
              h(i + 1, n) = zi;
            }
          }
          t = std::max(std::abs(h(i, n - 1)), std::abs(h(i, n)));
          if ((eps * t) * t > 1)
            for (int j = i; j <= n; ++j) {
              h(j, n - 1) /= t;
              h(j, n) /= t;
            }
        }
      }
    }
  }

  for (int j = nn - 1; j >= low; --j)
    for (int i = low; i <= high; ++i) {
      z = 0.0;
      for (int k = low; k <= std::min(j, high); ++k) z += v(i, k) * h(k, j);
      v(i, j) = z;
    }
}

}  // namespace

EigenDecomposition eig_dense(const Matrix& a, long max_iterations) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_dense needs a square matrix");
  const int n = a.rows();
  EigenDecomposition ed;
  if (n == 0) return ed;

  Matrix h = a;
  Matrix v;
  std::vector<double> d(static_cast<size_t>(n), 0.0), e(static_cast<size_t>(n), 0.0);
  if (n == 1) {
    v = Matrix::identity(1);
    d[0] = a(0, 0);
  } else {
    orthes(n, h, v);
    hqr2(n, h, v, d, e, max_iterations);
  }

  ed.values.resize(static_cast<size_t>(n));
  ed.vectors.assign(static_cast<size_t>(n), std::vector<std::complex<double>>(static_cast<size_t>(n)));
  for (int j = 0; j < n; ++j) {
    ed.values[static_cast<size_t>(j)] = {d[static_cast<size_t>(j)], e[static_cast<size_t>(j)]};
    if (e[static_cast<size_t>(j)] == 0.0) {
      for (int i = 0; i < n; ++i) ed.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)] = v(i, j);
    } else if (e[static_cast<size_t>(j)] > 0.0) {
      // columns j, j+1 hold re/im parts of the vector for d + i e
      for (int i = 0; i < n; ++i)
        ed.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)] = {v(i, j), v(i, j + 1)};
    } else {
      for (int i = 0; i < n; ++i)
        ed.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)] = {v(i, j - 1), -v(i, j)};
    }
  }
  return ed;
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
// below x, from the sign changes of the LDL^T pivots.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int count = 0;
  double q = 1.0;
  const double tiny = 1e-300;
  for (size_t i = 0; i < diag.size(); ++i) {
    double blk = (i == 0) ? 0.0 : off[i - 1] * off[i - 1] / q;
    q = diag[i] - x - blk;
    if (q == 0.0) q = tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> tridiag_smallest_eigenvalues(const std::vector<double>& diag,
                                                 const std::vector<double>& offdiag, int k) {
  const size_t n = diag.size();
  if (offdiag.size() + 1 != n) throw std::invalid_argument("offdiag size must be n-1");
  k = std::min<int>(k, static_cast<int>(n));

  double lo = diag[0], hi = diag[0];
  for (size_t i = 0; i < n; ++i) {
    const double rad =
        (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - rad);
    hi = std::max(hi, diag[i] + rad);
  }

  std::vector<double> out;
  out.reserve(static_cast<size_t>(k));
  for (int idx = 0; idx < k; ++idx) {
    double a = lo, b = hi;
    for (int it = 0; it < 100 && (b - a) > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b));
         ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(diag, offdiag, mid) > idx)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace qes
