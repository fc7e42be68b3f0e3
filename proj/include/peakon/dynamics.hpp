#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "peakon/core.hpp"

namespace peakon {

struct PhaseVelocity {
  std::vector<double> dq;
  std::vector<double> dp;
};

// Canonical equations dq_n = dH/dp_n, dp_n = -dH/dq_n of the
// Calogero-Francoise Hamiltonian with sgn(0) = 0 (the self-interaction and
// any one-sided derivative at the origin drop out).
PhaseVelocity rhs(const KernelParams& params, const PeakonConfig& config);
// Unordered positions are allowed here; coincident ones are rejected.
PhaseVelocity rhs(const KernelParams& params, std::span<const double> p,
                  std::span<const double> q);

struct CollisionEvent {
  double time = 0.0;             // extrapolated instant at which the gap closes
  double detection_time = 0.0;   // when the threshold was crossed
  std::pair<std::size_t, std::size_t> indices{0, 1};
  double gap = 0.0;              // q_{n+1} - q_n at detection
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PeakonConfig> states;
  std::vector<CollisionEvent> events;
  double hamiltonian_drift = 0.0;  // max |H(t) - H(0)| / |H(0)| over accepted steps
  double momentum_drift = 0.0;     // max |sum p(t) - sum p(0)| / sum |p(0)|
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double collision_gap = 1e-8;
  double mass_limit = 1e8;
  double initial_step = 0.0;  // 0 selects automatically
  std::size_t max_steps = 5'000'000;
  // Sample times in [0, t_final]. Empty records every accepted step.
  std::vector<double> output_times;
};

// Adaptive Dormand-Prince 5(4) integration with dense output. Positions are
// carried as (q_1, gaps) so that closing gaps keep full relative accuracy.
// A CollisionEvent ends the run early; it is not an error.
Trajectory integrate(const KernelParams& params, const PeakonConfig& config0, double t_final,
                     const IntegrateOptions& options = {});

// Reduced two-peakon variables: P0 = p1 + p2 (conserved), P = p2 - p1,
// Q = q2 - q1, H0sq = H(p, q), h0 = sqrt(4 H0sq - P0^2).
struct TwoPeakonReduced {
  double P0 = 0.0;
  double P = 0.0;
  double Q = 0.0;
  double H0sq = 0.0;
  double h0 = 0.0;

  static TwoPeakonReduced from_config(const PeakonConfig& config);

  // Closed-form P(t), Q(t) from the initial reduced state.
  double P_at(double t) const;
  double Q_at(double t) const;
  std::optional<double> blowup_time() const;
};

// (p1, p2, q1, q2)(t) from the closed forms; the centre q1 + q2 is integrated
// by adaptive Gauss-Kronrod quadrature of P0 (1 + e^{-Q(s)}).
PeakonConfig two_peakon_exact(const PeakonConfig& init, double t);

// Forward blow-up instant, present only for opposite-sign masses that approach.
std::optional<double> two_peakon_blowup_time(const PeakonConfig& init);

}  // namespace peakon
