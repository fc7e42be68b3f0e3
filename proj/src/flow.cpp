#include "peakon/flow.hpp"

#include <algorithm>
#include <cmath>

namespace peakon {

namespace {

constexpr const char* kModule = "isospectral-flow";

using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

bool symmetric_pair(const SpectralDataX& d) {
  if (d.size() != 2) return false;
  const Real sum = d.eigenvalues[0] + d.eigenvalues[1];
  return boost::multiprecision::abs(sum) <=
         Real("1e-12") * boost::multiprecision::abs(d.eigenvalues[1]);
}

}  // namespace

CollisionAtTime::CollisionAtTime(std::string module, CollisionSignal signal)
    : Error(std::move(module), "collision of peaks " + std::to_string(signal.peaks.first) +
                                   " and " + std::to_string(signal.peaks.second) +
                                   " at the requested time"),
      signal_(signal) {}

SpectralDataX evolve_spectral(const SpectralDataX& base, const Real& t) {
  SpectralDataX out = base;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Real f = exp(-t / (2 * base.eigenvalues[i]));
    out.gammas[i] *= f;
    out.couplings[i] *= f;
  }
  return out;
}

SpectralData evolve_spectral(const SpectralData& base, double t) {
  return to_double(evolve_spectral(to_real(base), Real(t)));
}

FlowState FlowState::from(const PeakonConfig& config) {
  return FlowState(spectral_data(SpectralProblem::from(config)));
}

InversionX invert_flow(const FlowState& state, const InversionOptions& options) {
  const SpectralDataX d = state.data();
  return invert_spectral(std::span<const Real>(d.eigenvalues), std::span<const Real>(d.gammas),
                         options);
}

std::pair<ConservativeState, WeylRepresentation> antipeakon_collision_state(double H0,
                                                                          double center) {
  if (!(H0 > 0.0) || !std::isfinite(H0)) throw InvalidInput(kModule, "H0 must be positive");
  if (!std::isfinite(center)) throw InvalidInput(kModule, "non-finite collision point");
  ConservativeState state(PeakonConfig(), DiscreteMeasure({{center, 4.0 * H0 * H0}}));
  const auto coeffs = string_coefficients(SpectralProblem::from(state));
  return {state, WeylRepresentation::continued_fraction(coeffs)};
}

ConservativeResult solve_conservative(const PeakonConfig& config0, double t) {
  if (!std::isfinite(t)) throw InvalidInput(kModule, "non-finite time");
  const FlowState flow = FlowState::from(config0).advanced(Real(t));
  auto inv = invert_flow(flow);
  if (auto* peaks = std::get_if<PeakonConfigX>(&inv))
    return ConservativeState(config_cast<double>(*peaks), DiscreteMeasure());
  CollisionSignal sig = std::get<CollisionSignal>(inv);
  sig.time = t;
  const SpectralDataX d = flow.data();
  if (symmetric_pair(d)) {
    // gamma_+ gamma_- = e^{-2 x_c} / 4 for the concentrated state at x_c
    const Real xc = -log(2 * sqrt(d.gammas[0] * d.gammas[1]));
    const double H0 = std::sqrt(hamiltonian(config0));
    // + 0.0 folds -log(1) = -0 into +0
    return antipeakon_collision_state(H0, to_double(xc) + 0.0).first;
  }
  return sig;
}

double normalized_denominator(const FlowState& state, std::size_t k) {
  const SpectralDataX d = state.data();
  const auto table = hankel_determinants_from_measure<Real>(d.eigenvalues, d.gammas);
  if (k >= table.delta1.size()) throw InvalidInput(kModule, "determinant index out of range");
  return to_double(table.delta1[k] * exp(Real(-table.log_scale1[k])));
}

std::vector<CollisionSignal> collision_times(const PeakonConfig& config0, double t_begin,
                                             double t_end, std::size_t samples, double tol) {
  if (!(t_end > t_begin) || samples < 1 || !(tol > 0.0))
    throw InvalidInput(kModule, "invalid collision search interval");
  const FlowState base = FlowState::from(config0);
  const std::size_t N = config0.size();
  std::vector<CollisionSignal> found;
  if (N < 2) return found;

  auto denominators = [&](double t) {
    const SpectralDataX d = base.advanced(Real(t)).data();
    const auto table = hankel_determinants_from_measure<Real>(d.eigenvalues, d.gammas);
    std::vector<int> signs(N + 1, 0);
    for (std::size_t k = 1; k <= N; ++k) signs[k] = table.delta1[k] > 0 ? 1 : (table.delta1[k] < 0 ? -1 : 0);
    return signs;
  };

  const double h = (t_end - t_begin) / static_cast<double>(samples);
  std::vector<int> prev = denominators(t_begin);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t0 = t_begin + static_cast<double>(i - 1) * h;
    const double t1 = i == samples ? t_end : t_begin + static_cast<double>(i) * h;
    const std::vector<int> cur = denominators(t1);
    for (std::size_t k = 1; k <= N; ++k) {
      if (prev[k] == cur[k]) continue;
      double lo = t0, hi = t1;
      const int s_lo = prev[k];
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const int s = denominators(mid)[k];
        if (s == 0) {
          lo = hi = mid;
          break;
        }
        (s == s_lo ? lo : hi) = mid;
      }
      CollisionSignal sig;
      sig.determinant_index = k;
      sig.peaks = {k - 1, k};
      sig.time = 0.5 * (lo + hi);
      found.push_back(sig);
    }
    prev = cur;
  }
  std::sort(found.begin(), found.end(),
            [](const CollisionSignal& a, const CollisionSignal& b) { return a.time < b.time; });
  return found;
}

TraceIdentities trace_identities(std::span<const double> sigma, const PeakonConfig& state) {
  return trace_identities(sigma, ConservativeState(state, DiscreteMeasure()));
}

TraceIdentities trace_identities(std::span<const double> sigma, const ConservativeState& state) {
  TraceIdentities r;
  for (double l : sigma) {
    if (l == 0.0) throw InvalidInput(kModule, "zero eigenvalue");
    r.lhs1 += 1.0 / l;
    r.lhs2 += 1.0 / (l * l);
  }
  for (const auto& pk : state.peaks()) r.rhs1 += 2.0 * pk.p;
  r.rhs2 = 2.0 * state.total_energy();
  return r;
}

}  // namespace peakon
