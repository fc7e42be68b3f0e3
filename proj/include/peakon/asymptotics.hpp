#pragma once

#include <span>
#include <vector>

#include "peakon/core.hpp"
#include "peakon/real.hpp"

namespace peakon {

// xi_lambda = ln|c_lambda(0)| + sum_{k != lambda} sgn(1/lambda - 1/k) ln|1 - lambda/k|
template <class T>
struct BasicPhaseShiftTable {
  std::vector<T> eigenvalues;
  std::vector<T> shifts;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};
using PhaseShiftTable = BasicPhaseShiftTable<double>;
using PhaseShiftTableX = BasicPhaseShiftTable<Real>;

PhaseShiftTable phase_shifts(std::span<const double> sigma, std::span<const double> couplings);
PhaseShiftTableX phase_shifts(std::span<const Real> sigma, std::span<const Real> couplings);

// sum_lambda (1/(2 lambda)) exp(-|x - t/(2 lambda) + xi_lambda|)
double asymptotic_profile(const PhaseShiftTable& shifts, double x, double t);
std::vector<double> asymptotic_profile(const PhaseShiftTable& shifts, std::span<const double> xs,
                                       double t);

// The asymptotic train as a peakon configuration: heights 1/(2 lambda) at
// the ray positions t/(2 lambda) - xi_lambda, sorted by position.
PeakonConfigX asymptotic_train(const PhaseShiftTableX& shifts, const Real& t);

struct ResolutionOptions {
  double step = 1e-2;
  double margin = 20.0;
};

// sup_x |u(x, t) - u_asym(x, t)| over a uniform grid spanning the exact and
// asymptotic peaks plus `margin`, together with every kink point. Exact and
// asymptotic peaks are paired by position and differenced pairwise from
// extended-precision offsets, so errors far below double epsilon relative to
// the profile height are resolved. Throws CollisionAtTime at a collision.
double resolution_error(const PeakonConfig& config0, double t,
                        const ResolutionOptions& options = {});

struct RayArgmax {
  double ray = 0.0;        // t/(2 lambda)
  double predicted = 0.0;  // t/(2 lambda) - xi_lambda
  double argmax = 0.0;     // location of the extremum of u(., t) near the ray
};

// For each eigenvalue, the extremum (max for lambda > 0, min for lambda < 0)
// of the exact profile inside the Voronoi cell of its predicted position.
std::vector<RayArgmax> ray_argmax(const PeakonConfig& config0, double t,
                                  const ResolutionOptions& options = {});

}  // namespace peakon
