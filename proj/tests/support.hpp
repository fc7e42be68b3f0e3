#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "peakon/core.hpp"

// Seeded generators for property tests. Every suite draws from its own fixed
// seed so failures reproduce exactly.
namespace peakon::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct ConfigShape {
  std::size_t n_min = 1;
  std::size_t n_max = 8;
  double mass_min = 0.1;
  double mass_max = 5.0;
  double gap_min = 0.2;
  double gap_max = 2.0;
  bool mixed_signs = false;
};

// Positions start in [-2, 2] and grow by gaps drawn from [gap_min, gap_max].
inline PeakonConfig random_config(Rng& rng, const ConfigShape& shape) {
  const std::size_t n = uniform_index(rng, shape.n_min, shape.n_max);
  std::vector<Peak> peaks;
  double q = uniform(rng, -2.0, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) q += uniform(rng, shape.gap_min, shape.gap_max);
    double p = uniform(rng, shape.mass_min, shape.mass_max);
    if (shape.mixed_signs && (rng() & 1u)) p = -p;
    peaks.push_back({p, q});
  }
  return PeakonConfig(std::move(peaks));
}

inline double relative_error(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// max over peaks of the larger of the relative mass and position errors;
// positions use max(|q|, 1) as scale since q = 0 is common
inline double config_error(const PeakonConfig& got, const PeakonConfig& want) {
  if (got.size() != want.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    worst = std::max(worst, relative_error(got[i].p, want[i].p));
    worst = std::max(worst, std::fabs(got[i].q - want[i].q) / std::max(std::fabs(want[i].q), 1.0));
  }
  return worst;
}

// sup-norm distance of the two profiles over a grid covering both
inline double profile_distance(const PeakonConfig& a, const PeakonConfig& b, double step = 1e-2) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto* c : {&a, &b})
    for (const auto& pk : *c) {
      lo = std::min(lo, pk.q);
      hi = std::max(hi, pk.q);
    }
  if (!std::isfinite(lo)) return 0.0;
  std::vector<double> xs;
  for (double x = lo - 5.0; x <= hi + 5.0; x += step) xs.push_back(x);
  for (const auto* c : {&a, &b})
    for (const auto& pk : *c) xs.push_back(pk.q);
  const auto ua = eval_profile(a, xs);
  const auto ub = eval_profile(b, xs);
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) d = std::max(d, std::fabs(ua[i] - ub[i]));
  return d;
}

}  // namespace peakon::testing
