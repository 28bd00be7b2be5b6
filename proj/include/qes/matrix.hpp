#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qes {

/// Small dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  double trace() const;
  double max_abs() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(double s) const;
  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<std::complex<double>> values;
  // vectors[j] belongs to values[j]; complex conjugate pairs carry
  // conjugate vectors.
  std::vector<std::vector<std::complex<double>>> vectors;
};

/// Eigenvalues and eigenvectors of a general real square matrix via
/// Householder reduction to Hessenberg form followed by shifted QR
/// iteration. Throws NonConvergenceError past max_iterations QR sweeps.
EigenDecomposition eig_dense(const Matrix& a, long max_iterations);

/// The k smallest eigenvalues of a symmetric tridiagonal matrix
/// (diag, offdiag) by Sturm-sequence bisection.
std::vector<double> tridiag_smallest_eigenvalues(const std::vector<double>& diag,
                                                 const std::vector<double>& offdiag, int k);

}  // namespace qes
