#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "peakon/core.hpp"
#include "peakon/moments.hpp"
#include "peakon/spectral.hpp"

namespace peakon {

// Raised where a caller needs a regular configuration but the requested time
// is a collision instant without a reconstructed singular part.
class CollisionAtTime : public Error {
 public:
  CollisionAtTime(std::string module, CollisionSignal signal);
  const CollisionSignal& signal() const noexcept { return signal_; }

 private:
  CollisionSignal signal_;
};

// gamma(t) = gamma(0) e^{-t/(2 lambda)}, c(t) = c(0) e^{-t/(2 lambda)}.
SpectralData evolve_spectral(const SpectralData& base, double t);
SpectralDataX evolve_spectral(const SpectralDataX& base, const Real& t);

// Spectral data at t = 0 plus an elapsed time. Composition only adds times,
// so advanced(s).advanced(t) and advanced(s + t) are the same state.
class FlowState {
 public:
  FlowState() = default;
  explicit FlowState(SpectralDataX base, Real t = 0) : base_(std::move(base)), t_(std::move(t)) {}
  static FlowState from(const PeakonConfig& config);

  const SpectralDataX& base() const noexcept { return base_; }
  const Real& time() const noexcept { return t_; }
  FlowState advanced(const Real& dt) const { return FlowState(base_, t_ + dt); }
  SpectralDataX data() const { return evolve_spectral(base_, t_); }

 private:
  SpectralDataX base_;
  Real t_ = 0;
};

// Regular configuration at the flow's time (extended precision), or the
// collision signal of the vanishing Stieltjes denominator.
InversionX invert_flow(const FlowState& state, const InversionOptions& options = {});

using ConservativeResult = std::variant<ConservativeState, CollisionSignal>;

// Energy-concentrated state of a colliding symmetric pair: no peaks,
// upsilon = 4 H0^2 delta_center. The Weyl representation is the continued
// fraction of that state; z M = 4 H0^2 z^2 / (1 - 4 H0^2 z^2) at center 0.
std::pair<ConservativeState, WeylRepresentation> antipeakon_collision_state(double H0,
                                                                          double center = 0.0);

// Forward transform, evolution to t and inversion. At a collision instant of
// a symmetric pair (lambda_1 = -lambda_2) the concentrated state above is
// returned; other collision instants yield the signal with its time set.
ConservativeResult solve_conservative(const PeakonConfig& config0, double t);

// Instants in (t_begin, t_end] where some Delta1[k](t) changes sign, located
// by bisection to absolute accuracy `tol`. `samples` sets the scan density.
std::vector<CollisionSignal> collision_times(const PeakonConfig& config0, double t_begin,
                                             double t_end, std::size_t samples = 2000,
                                             double tol = 1e-13);

// Delta1[k] / exp(log_scale1[k]) along the flow, for inspecting the
// denominator that vanishes at a collision.
double normalized_denominator(const FlowState& state, std::size_t k);

struct TraceIdentities {
  double lhs1 = 0.0;  // sum 1/lambda
  double rhs1 = 0.0;  // sum omega_n = 2 sum p_n
  double lhs2 = 0.0;  // sum 1/lambda^2
  double rhs2 = 0.0;  // 2 int d mu = 8 H + 2 sum upsilon_n
};

TraceIdentities trace_identities(std::span<const double> sigma, const PeakonConfig& state);
TraceIdentities trace_identities(std::span<const double> sigma, const ConservativeState& state);

}  // namespace peakon
