#include <bit>
#include <cmath>
#include <cstdint>

#include "backends.hpp"
#include "exp_coeffs.hpp"

namespace peakon::kernels {

double exp_nonpositive(double t) {
  using namespace detail;
  if (!(t >= kExpFloor)) return 0.0;
  const double k = std::floor(t * kLog2e + 0.5);
  double r = std::fma(-k, kLn2Hi, t);
  r = std::fma(-k, kLn2Lo, r);
  double poly = kExpCoeffs[kExpDegree];
  for (int j = kExpDegree - 1; j >= 0; --j) poly = std::fma(poly, r, kExpCoeffs[j]);
  const double shifted = (k + kExpBias) + kShifter;
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(shifted) << 52;
  return poly * std::bit_cast<double>(bits);
}

namespace detail::scalar {

void profile(std::span<const double> x, std::span<const double> p, std::span<const double> q,
             std::span<double> u) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n)
      acc += p[n] * kernels::exp_nonpositive(-std::fabs(x[i] - q[n]));
    u[i] = acc;
  }
}

void profile_slope(std::span<const double> x, std::span<const double> p,
                   std::span<const double> q, std::span<double> u, std::span<double> ux) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    double slope = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
      const double term = p[n] * kernels::exp_nonpositive(-std::fabs(x[i] - q[n]));
      const double ms = static_cast<double>(x[i] < q[n]) - static_cast<double>(x[i] > q[n]);
      acc += term;
      slope += ms * term;
    }
    u[i] = acc;
    ux[i] = slope;
  }
}

void paired_difference(std::span<const double> x, const PairedPeaks& pairs,
                       std::span<double> out) {
  const std::size_t m_count = pairs.p.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      const double lo = std::fmin(pairs.q[m], pairs.c[m]);
      const double hi = std::fmax(pairs.q[m], pairs.c[m]);
      const double ec = kernels::exp_nonpositive(-std::fabs(x[i] - pairs.c[m]));
      const double eq = kernels::exp_nonpositive(-std::fabs(x[i] - pairs.q[m]));
      double term;
      if (x[i] > lo && x[i] < hi) {
        const double a = pairs.p[m] * eq;
        const double b = pairs.h[m] * ec;
        term = a - b;
      } else {
        term = ec * (x[i] >= hi ? pairs.right[m] : pairs.left[m]);
      }
      acc += term;
    }
    out[i] = acc;
  }
}

void exp_nonpositive(std::span<const double> t, std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = kernels::exp_nonpositive(t[i]);
}

}  // namespace detail::scalar

const KernelTable detail::kScalarTable = {
    &detail::scalar::profile,
    &detail::scalar::profile_slope,
    &detail::scalar::paired_difference,
    &detail::scalar::exp_nonpositive,
};

}  // namespace peakon::kernels
