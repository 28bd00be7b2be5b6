#include "qes/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qes/errors.hpp"

namespace qes {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int power, double coeff) {
  std::vector<double> c(static_cast<size_t>(power) + 1, 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::coeff(int power) const {
  if (power < 0 || power >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<size_t>(power)];
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

double Polynomial::eval(double x) const {
  double y = 0.0;
  for (size_t k = c_.size(); k-- > 0;) y = y * x + c_[k];
  return y;
}

std::complex<double> Polynomial::eval(const std::complex<double>& x) const {
  std::complex<double> y = 0.0;
  for (size_t k = c_.size(); k-- > 0;) y = y * x + c_[k];
  return y;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> r(std::max(c_.size(), other.c_.size()), 0.0);
  for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
  for (size_t k = 0; k < other.c_.size(); ++k) r[k] += other.c_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * (-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial();
  std::vector<double> r(c_.size() + other.c_.size() - 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < other.c_.size(); ++j) r[i + j] += c_[i] * other.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r(c_);
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

LaurentPoly::LaurentPoly(const std::map<int, double>& terms) {
  for (const auto& [e, v] : terms) add_term(e, v);
}

LaurentPoly::LaurentPoly(const Polynomial& p) {
  for (int k = 0; k <= p.degree(); ++k) add_term(k, p.coeff(k));
}

void LaurentPoly::add_term(int exponent, double coeff) {
  if (coeff == 0.0) return;
  auto it = c_.find(exponent);
  if (it == c_.end()) {
    c_.emplace(exponent, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0.0) c_.erase(it);
  }
}

double LaurentPoly::coeff(int exponent) const {
  auto it = c_.find(exponent);
  return it == c_.end() ? 0.0 : it->second;
}

int LaurentPoly::min_exponent() const {
  if (c_.empty()) throw std::logic_error("min_exponent of zero Laurent polynomial");
  return c_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (c_.empty()) throw std::logic_error("max_exponent of zero Laurent polynomial");
  return c_.rbegin()->first;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, v] : c_) m = std::max(m, std::abs(v));
  return m;
}

LaurentPoly LaurentPoly::chop(double eps_rel) const {
  const double cut = eps_rel * max_abs_coeff();
  LaurentPoly r;
  for (const auto& [e, v] : c_)
    if (std::abs(v) > cut) r.add_term(e, v);
  return r;
}

LaurentPoly LaurentPoly::shifted(int mu) const {
  LaurentPoly r;
  for (const auto& [e, v] : c_) r.add_term(e + mu, v);
  return r;
}

LaurentPoly LaurentPoly::scaled(double s) const {
  LaurentPoly r;
  for (const auto& [e, v] : c_) r.add_term(e, v * s);
  return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  LaurentPoly r = *this;
  for (const auto& [e, v] : other.c_) r.add_term(e, v);
  return r;
}

LaurentPoly LaurentPoly::operator*(const Polynomial& p) const {
  LaurentPoly r;
  for (const auto& [e, v] : c_)
    for (int k = 0; k <= p.degree(); ++k) r.add_term(e + k, v * p.coeff(k));
  return r;
}

double LaurentPoly::eval(double x) const {
  double y = 0.0;
  for (const auto& [e, v] : c_) y += v * std::pow(x, e);
  return y;
}

Polynomial LaurentPoly::to_polynomial() const {
  if (is_zero()) return Polynomial();
  if (min_exponent() < 0)
    throw NonPolynomialError("Laurent polynomial has negative exponent " +
                             std::to_string(min_exponent()));
  std::vector<double> c(static_cast<size_t>(max_exponent()) + 1, 0.0);
  for (const auto& [e, v] : c_) c[static_cast<size_t>(e)] = v;
  return Polynomial(std::move(c));
}

}  // namespace qes
