#pragma once

#include <complex>
#include <span>
#include <vector>

#include "peakon/core.hpp"
#include "peakon/polynomial.hpp"
#include "peakon/real.hpp"

namespace peakon {

// Point interaction of the spectral problem -y'' + y/4 = z w y + z^2 v y:
// a derivative jump [y'](x) = -(z omega + z^2 upsilon) y(x).
struct SpectralAtom {
  Real x;
  Real omega;    // 2 p for a peak
  Real upsilon;  // singular energy weight (dipole part), >= 0
};

// Ordered atoms (strictly increasing x). Peaks and singular energy at the same
// point are merged into one atom.
class SpectralProblem {
 public:
  SpectralProblem() = default;
  explicit SpectralProblem(std::vector<SpectralAtom> atoms);

  static SpectralProblem from(const PeakonConfig& config);
  static SpectralProblem from(const PeakonConfigX& config);
  static SpectralProblem from(const ConservativeState& state);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<SpectralAtom>& atoms() const noexcept { return atoms_; }

 private:
  std::vector<SpectralAtom> atoms_;
};

enum class JostDirection { plus, minus };

// phi(z, x) = A_j(z) e^{x/2} + B_j(z) e^{-x/2} on interval j = (x_j, x_{j+1}),
// with x_0 = -inf and x_{K+1} = +inf. phi_- = e^{x/2} on interval 0 and
// phi_+ = e^{-x/2} on interval K.
struct JostSolution {
  JostDirection direction = JostDirection::minus;
  std::vector<Real> breakpoints;
  std::vector<Polynomial> A;
  std::vector<Polynomial> B;

  // interval index of x; a breakpoint belongs to the interval on its right
  std::size_t interval(const Real& x) const;
  Real operator()(const Real& z, const Real& x) const;
  double operator()(double z, double x) const;
  // derivative in x
  Real slope(const Real& z, const Real& x) const;
};

JostSolution jost_solution(const SpectralProblem& problem, JostDirection direction);
JostSolution jost_solution(const PeakonConfig& config, JostDirection direction);

// W(z) = phi_+ phi_-' - phi_+' phi_-, equal to the e^{x/2} coefficient of phi_- at +inf.
Polynomial wronskian_polynomial(const SpectralProblem& problem);
Polynomial wronskian_polynomial(const PeakonConfig& config);

// Increasing real simple roots of W. Empty for an empty problem.
std::vector<Real> eigenvalues(const SpectralProblem& problem);
std::vector<double> eigenvalues(const PeakonConfig& config);

// 1/gamma = int (phi_-')^2 + phi_-^2/4 dx + lambda^2 sum_n upsilon_n phi_-(x_n)^2.
// Each sigma entry must satisfy |W(lambda)| <= 1e-12 sum_k |w_k| |lambda|^k.
std::vector<Real> norming_constants(const SpectralProblem& problem, std::span<const Real> sigma);
std::vector<double> norming_constants(const PeakonConfig& config, std::span<const double> sigma);

// c = phi_+ / phi_-, checked to be x-independent within 1e-10 on every interval.
std::vector<Real> coupling_constants(const SpectralProblem& problem, std::span<const Real> sigma);
std::vector<double> coupling_constants(const PeakonConfig& config, std::span<const double> sigma);

template <class T>
struct BasicStringCoefficients {
  std::vector<T> m;  // m_n = 4 omega_n cosh^2(x_n/2), n = 1..K
  std::vector<T> l;  // l_0..l_K, sum = 1
  std::vector<T> v;  // v_n = 4 upsilon_n cosh^2(x_n/2)
};
using StringCoefficients = BasicStringCoefficients<double>;
using StringCoefficientsX = BasicStringCoefficients<Real>;

StringCoefficientsX string_coefficients(const SpectralProblem& problem);
StringCoefficients string_coefficients(const PeakonConfig& config);

template <class T>
struct BasicSpectralData {
  std::vector<T> eigenvalues;  // increasing
  std::vector<T> gammas;
  std::vector<T> couplings;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};
using SpectralData = BasicSpectralData<double>;
using SpectralDataX = BasicSpectralData<Real>;

SpectralDataX spectral_data(const SpectralProblem& problem);
SpectralData spectral_data(const PeakonConfig& config);
SpectralData to_double(const SpectralDataX& data);
SpectralDataX to_real(const SpectralData& data);

// Weyl function in one of its two closed forms:
//   partial fractions   M(z) = sum gamma / (lambda - z)
//   continued fraction  z M - 1 = 1/(-l_0 + 1/(m_1 z + v_1 z^2 + 1/(-l_1 + ... + 1/(-l_K))))
struct WeylRepresentation {
  enum class Form { partial_fraction, continued_fraction };
  Form form = Form::partial_fraction;
  std::vector<Real> poles;
  std::vector<Real> residues;  // gamma per pole
  std::vector<Real> m, l, v;

  static WeylRepresentation partial_fractions(std::vector<Real> poles, std::vector<Real> gammas);
  static WeylRepresentation partial_fractions(const SpectralData& data);
  static WeylRepresentation partial_fractions(const SpectralDataX& data);
  static WeylRepresentation continued_fraction(const StringCoefficientsX& coeffs);
  static WeylRepresentation continued_fraction(const StringCoefficients& coeffs);
};

// Throws InvalidInput at a pole, NumericalFailure on a vanishing intermediate
// denominator (z = 0 included for the continued fraction).
std::complex<double> weyl_eval(const WeylRepresentation& rep, std::complex<double> z);

// M(z) = -(phi_+' + phi_+/2) / (z e^x (phi_+' - phi_+/2)) evaluated at a point x
// left of every atom, where the ratio is exactly x-independent.
std::complex<double> weyl_from_jost(const PeakonConfig& config, std::complex<double> z, double x);

}  // namespace peakon
