#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <vector>

namespace qes {

/// Dense real polynomial, coefficients stored by ascending power.
/// Invariant: the trailing coefficient is nonzero, or the coefficient
/// vector is empty (the zero polynomial).
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(int power, double coeff = 1.0);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double coeff(int power) const;
  const std::vector<double>& coefficients() const { return c_; }

  Polynomial derivative() const;
  double eval(double x) const;
  std::complex<double> eval(const std::complex<double>& x) const;
  double max_abs_coeff() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  bool operator==(const Polynomial& other) const { return c_ == other.c_; }

 private:
  void trim();
  std::vector<double> c_;
};

/// Sparse Laurent polynomial: integer exponents (possibly negative) mapped
/// to real coefficients. Exact zeros are never stored; numerically tiny
/// terms are removed only by an explicit chop().
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const std::map<int, double>& terms);
  explicit LaurentPoly(const Polynomial& p);

  void add_term(int exponent, double coeff);
  double coeff(int exponent) const;
  bool is_zero() const { return c_.empty(); }
  int min_exponent() const;  // throws on zero polynomial
  int max_exponent() const;
  const std::map<int, double>& terms() const { return c_; }
  double max_abs_coeff() const;

  /// Removes terms with |coeff| <= eps_rel * max_abs_coeff().
  LaurentPoly chop(double eps_rel) const;
  /// Multiplies by x^mu (shifts every exponent).
  LaurentPoly shifted(int mu) const;
  LaurentPoly scaled(double s) const;
  LaurentPoly operator+(const LaurentPoly& other) const;
  /// Convolution with a dense polynomial.
  LaurentPoly operator*(const Polynomial& p) const;

  double eval(double x) const;
  /// Conversion for nonnegative-exponent content; throws NonPolynomialError.
  Polynomial to_polynomial() const;

 private:
  std::map<int, double> c_;
};

}  // namespace qes
