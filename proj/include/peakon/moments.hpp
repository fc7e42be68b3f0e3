#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "peakon/core.hpp"
#include "peakon/real.hpp"
#include "peakon/spectral.hpp"

namespace peakon {

using Rational = mpq_class;

// s_0 = 1 + sum gamma, s_k = sum lambda^k gamma: the moments of the positive
// measure rho = delta_0 + sum gamma_lambda delta_lambda.
template <class T>
struct BasicMomentSequence {
  std::vector<T> s;
};

// Hankel determinants with the k x k convention (index 0 is the empty
// determinant 1). delta0 carries one entry more (k = 0..N+1) than delta1
// (k = 0..N), so that l_N is available without a subtraction.
// log_scale* hold the natural log of the largest monomial each determinant
// is built from; it sets the collision tolerance in floating arithmetic.
template <class T>
struct BasicHankelTable {
  std::vector<T> delta0;
  std::vector<T> delta1;
  std::vector<double> log_scale0;
  std::vector<double> log_scale1;

  std::size_t order() const noexcept { return delta1.empty() ? 0 : delta1.size() - 1; }
};

// A Stieltjes denominator Delta1[k] vanished: peaks k-1 and k (0-based)
// collide. `relative_size` is |Delta1[k]| / scale (0 in exact arithmetic).
struct CollisionSignal {
  std::size_t determinant_index = 0;
  std::pair<std::size_t, std::size_t> peaks{0, 1};
  double relative_size = 0.0;
  double time = 0.0;  // set by callers that know the instant
};

using MomentSequence = BasicMomentSequence<double>;
using HankelTable = BasicHankelTable<double>;

template <class T>
BasicMomentSequence<T> moments(std::span<const T> sigma, std::span<const T> gammas, std::size_t K);
MomentSequence moments(std::span<const double> sigma, std::span<const double> gammas,
                       std::size_t K);

// Moment route: leading k x k minors of (s_{i+j}) and (s_{i+j+1}) by Gaussian
// elimination in T. Needs s_0..s_{2N}.
template <class T>
BasicHankelTable<T> hankel_determinants(const BasicMomentSequence<T>& s, std::size_t N);
HankelTable hankel_determinants(const MomentSequence& s, std::size_t N);

// Heine route: Delta0[k] = sum over k-subsets S of the atoms of rho of
// prod_S w prod_{i<j in S} (x_i - x_j)^2, Delta1[k] the same with an extra
// prod_S x. Free of cancellation when every lambda > 0.
template <class T>
BasicHankelTable<T> hankel_determinants_from_measure(std::span<const T> sigma,
                                                     std::span<const T> gammas);

inline constexpr double kCollisionTolerance = 1e-10;
inline constexpr std::size_t kMaxFloatingOrder = 16;

// m_n = Delta0[n]^2 / (Delta1[n-1] Delta1[n]), n = 1..N
// l_{n-1} = Delta1[n-1]^2 / (Delta0[n-1] Delta0[n]), n = 1..N+1
// tolerance <= 0 demands exact zero (rational arithmetic).
template <class T>
std::variant<BasicStringCoefficients<T>, CollisionSignal> stieltjes_coefficients(
    const BasicHankelTable<T>& table, std::size_t N, double tolerance = kCollisionTolerance);
std::variant<StringCoefficients, CollisionSignal> stieltjes_coefficients(const HankelTable& table,
                                                                         std::size_t N);

// q_n = log(L_n / R_n), p_n = m_n L_n R_n / (2 (L_n + R_n)^2) with
// L_n = sum_{k<n} l_k, R_n = sum_{k>=n} l_k; requires |sum l - 1| <= 1e-10
// and L_n, R_n > 0.
PeakonConfig peakons_from_coefficients(std::span<const double> m, std::span<const double> l);
PeakonConfigX peakons_from_coefficients(std::span<const Real> m, std::span<const Real> l);

enum class Arithmetic { floating, rational };
enum class HankelRoute { heine, moments };

struct InversionOptions {
  Arithmetic arithmetic = Arithmetic::floating;
  HankelRoute route = HankelRoute::heine;
  double collision_tolerance = kCollisionTolerance;
};

using Inversion = std::variant<PeakonConfig, CollisionSignal>;
using InversionX = std::variant<PeakonConfigX, CollisionSignal>;

Inversion invert_spectral(std::span<const double> sigma, std::span<const double> gammas,
                          const InversionOptions& options = {});
InversionX invert_spectral(std::span<const Real> sigma, std::span<const Real> gammas,
                           const InversionOptions& options = {});

// Exact pipeline for rational spectral data: moments, both determinant routes
// (required to agree exactly), string coefficients with sum l == 1 exactly.
struct RationalInversion {
  BasicHankelTable<Rational> table;
  BasicStringCoefficients<Rational> coefficients;
  PeakonConfigX peaks;  // positions need logarithms, so only this part is rounded
};
std::variant<RationalInversion, CollisionSignal> invert_spectral_rational(
    std::span<const Rational> sigma, std::span<const Rational> gammas);

}  // namespace peakon
