#pragma once

#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace peakon {

// 60-digit binary float for the spectral transforms; peak separations of
// order e^-90 stay resolvable.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>,
                                           boost::multiprecision::et_off>;

inline double to_double(const Real& x) { return static_cast<double>(x); }

inline std::vector<Real> to_real(std::span<const double> xs) {
  return {xs.begin(), xs.end()};
}

inline std::vector<double> to_double(std::span<const Real> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const Real& x : xs) out.push_back(static_cast<double>(x));
  return out;
}

}  // namespace peakon
