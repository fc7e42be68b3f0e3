#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "peakon/real.hpp"

namespace peakon {

// Real-coefficient polynomial, ascending degree. Trailing zeros are trimmed,
// so the zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Real> coeffs);
  Polynomial(std::initializer_list<Real> coeffs) : Polynomial(std::vector<Real>(coeffs)) {}

  static Polynomial constant(const Real& c) { return Polynomial({c}); }
  static Polynomial monomial(const Real& c, std::size_t degree);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Real>& coefficients() const noexcept { return c_; }
  // Coefficient of z^k (zero beyond the degree).
  Real operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Real(0); }
  std::vector<double> coefficients_double() const { return to_double(c_); }

  Real operator()(const Real& z) const;
  double operator()(double z) const;
  // value and first derivative in one Horner pass
  void eval_with_derivative(const Real& z, Real& value, Real& slope) const;
  // sum_k |a_k| |z|^k, the natural scale for residual tests
  Real magnitude(const Real& z) const;

  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Real& s, const Polynomial& a);
  Polynomial operator-() const;

  // Remainder of Euclidean division (divisor must be nonzero).
  Polynomial remainder(const Polynomial& divisor) const;

 private:
  void trim();
  std::vector<Real> c_;
};

// Sturm chain p, p', -rem(p, p'), ... for counting distinct real roots.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);
  // number of distinct real roots in (a, b]
  int count(const Real& a, const Real& b) const;
  // all distinct real roots isolated and bisected to relative width `rel`
  std::vector<Real> roots(const Real& rel) const;

 private:
  int sign_changes(const Real& x) const;
  std::vector<Polynomial> chain_;
  Real bound_;
};

// All roots of p, which must be real and simple, in increasing order.
// Companion-matrix estimates in double are polished by Newton-Maehly in Real;
// Sturm bisection takes over when a complex, repeated or unconverged estimate
// survives. Throws NumericalFailure when neither route certifies deg p roots.
std::vector<Real> real_simple_roots(const Polynomial& p);

}  // namespace peakon
