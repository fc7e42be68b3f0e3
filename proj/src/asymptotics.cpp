#include "peakon/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "peakon/flow.hpp"
#include "peakon/kernels.hpp"
#include "peakon/spectral.hpp"

namespace peakon {

namespace {

constexpr const char* kModule = "asymptotics";

template <class T>
BasicPhaseShiftTable<T> shifts_impl(std::span<const T> sigma, std::span<const T> couplings) {
  using std::abs;
  using std::log;
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  if (sigma.size() != couplings.size())
    throw InvalidInput(kModule, "eigenvalue/coupling count mismatch");
  BasicPhaseShiftTable<T> out;
  out.eigenvalues.assign(sigma.begin(), sigma.end());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const T& lam = sigma[i];
    if (lam == 0) throw InvalidInput(kModule, "zero eigenvalue");
    if (couplings[i] == 0) throw InvalidInput(kModule, "zero coupling constant");
    T xi = log(abs(couplings[i]));
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      if (k == i) continue;
      if (sigma[k] == lam) throw InvalidInput(kModule, "repeated eigenvalue");
      const T d = 1 / lam - 1 / sigma[k];
      const T term = log(abs(T(1 - lam / sigma[k])));
      xi += d > 0 ? term : T(-term);
    }
    out.shifts.push_back(xi);
  }
  return out;
}

struct ExactAndTrain {
  PeakonConfigX exact;
  PeakonConfigX train;
};

ExactAndTrain exact_and_train(const PeakonConfig& config0, double t) {
  const FlowState flow = FlowState::from(config0).advanced(Real(t));
  auto inv = invert_flow(flow);
  if (auto* sig = std::get_if<CollisionSignal>(&inv)) {
    CollisionSignal s = *sig;
    s.time = t;
    throw CollisionAtTime(kModule, s);
  }
  const SpectralDataX& base = flow.base();
  const auto table = phase_shifts(std::span<const Real>(base.eigenvalues),
                                  std::span<const Real>(base.couplings));
  return {std::get<PeakonConfigX>(inv), asymptotic_train(table, Real(t))};
}

}  // namespace

PhaseShiftTable phase_shifts(std::span<const double> sigma, std::span<const double> couplings) {
  return shifts_impl<double>(sigma, couplings);
}

PhaseShiftTableX phase_shifts(std::span<const Real> sigma, std::span<const Real> couplings) {
  return shifts_impl<Real>(sigma, couplings);
}

double asymptotic_profile(const PhaseShiftTable& shifts, double x, double t) {
  double u = 0.0;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const double speed = 1.0 / (2.0 * shifts.eigenvalues[i]);
    u += speed * std::exp(-std::fabs(x - t * speed + shifts.shifts[i]));
  }
  return u;
}

std::vector<double> asymptotic_profile(const PhaseShiftTable& shifts, std::span<const double> xs,
                                       double t) {
  std::vector<double> p, q;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const double speed = 1.0 / (2.0 * shifts.eigenvalues[i]);
    p.push_back(speed);
    q.push_back(t * speed - shifts.shifts[i]);
  }
  std::vector<double> u(xs.size());
  kernels::profile(xs, p, q, u);
  return u;
}

PeakonConfigX asymptotic_train(const PhaseShiftTableX& shifts, const Real& t) {
  std::vector<PeakX> peaks;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const Real h = 1 / (2 * shifts.eigenvalues[i]);
    peaks.push_back({h, t * h - shifts.shifts[i]});
  }
  std::sort(peaks.begin(), peaks.end(), [](const PeakX& a, const PeakX& b) { return a.q < b.q; });
  return PeakonConfigX(std::move(peaks));
}

double resolution_error(const PeakonConfig& config0, double t, const ResolutionOptions& options) {
  if (!(options.step > 0.0) || !(options.margin >= 0.0))
    throw InvalidInput(kModule, "grid step must be positive and margin nonnegative");
  if (config0.empty()) return 0.0;
  const ExactAndTrain et = exact_and_train(config0, t);
  const std::size_t n = et.exact.size();
  if (et.train.size() != n) throw NumericalFailure(kModule, "peak count mismatch");

  std::vector<double> p(n), q(n), h(n), c(n), left(n), right(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<double> xs;
  for (std::size_t m = 0; m < n; ++m) {
    const Real& pe = et.exact[m].p;
    const Real& qe = et.exact[m].q;
    const Real& ha = et.train[m].p;
    const Real& ca = et.train[m].q;
    const Real dq = qe - ca;
    const Real dp = pe - ha;
    left[m] = to_double(ha * boost::multiprecision::expm1(-dq) + dp * boost::multiprecision::exp(-dq));
    right[m] = to_double(ha * boost::multiprecision::expm1(dq) + dp * boost::multiprecision::exp(dq));
    p[m] = to_double(pe);
    q[m] = to_double(qe);
    h[m] = to_double(ha);
    c[m] = to_double(ca);
    lo = std::min({lo, q[m], c[m]});
    hi = std::max({hi, q[m], c[m]});
    xs.push_back(q[m]);
    xs.push_back(c[m]);
  }
  lo -= options.margin;
  hi += options.margin;
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / options.step));
  for (std::size_t i = 0; i <= count; ++i) xs.push_back(lo + static_cast<double>(i) * options.step);

  std::vector<double> diff(xs.size());
  kernels::paired_difference(xs, kernels::PairedPeaks{p, q, h, c, left, right}, diff);
  double sup = 0.0;
  for (double d : diff) sup = std::max(sup, std::fabs(d));
  return sup;
}

std::vector<RayArgmax> ray_argmax(const PeakonConfig& config0, double t,
                                  const ResolutionOptions& options) {
  if (!(options.step > 0.0)) throw InvalidInput(kModule, "grid step must be positive");
  const FlowState flow = FlowState::from(config0).advanced(Real(t));
  auto inv = invert_flow(flow);
  if (auto* sig = std::get_if<CollisionSignal>(&inv)) {
    CollisionSignal s = *sig;
    s.time = t;
    throw CollisionAtTime(kModule, s);
  }
  const PeakonConfig exact = config_cast<double>(std::get<PeakonConfigX>(inv));
  const SpectralData base = to_double(flow.base());
  const PhaseShiftTable table = phase_shifts(base.eigenvalues, base.couplings);

  const std::size_t n = table.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> predicted(n);
  for (std::size_t i = 0; i < n; ++i)
    predicted[i] = t / (2.0 * table.eigenvalues[i]) - table.shifts[i];
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return predicted[a] < predicted[b]; });

  std::vector<RayArgmax> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    const double lo = r == 0 ? predicted[i] - options.margin
                             : 0.5 * (predicted[order[r - 1]] + predicted[i]);
    const double hi = r + 1 == n ? predicted[i] + options.margin
                                 : 0.5 * (predicted[i] + predicted[order[r + 1]]);
    // a peakon profile is extremal on a kink or on the cell boundary
    std::vector<double> xs{lo, hi};
    for (const auto& pk : exact)
      if (pk.q > lo && pk.q < hi) xs.push_back(pk.q);
    const auto u = eval_profile(exact, xs);
    const double sign = table.eigenvalues[i] > 0.0 ? 1.0 : -1.0;
    std::size_t best = 0;
    for (std::size_t j = 1; j < xs.size(); ++j)
      if (sign * u[j] > sign * u[best]) best = j;
    out[i] = {t / (2.0 * table.eigenvalues[i]), predicted[i], xs[best]};
  }
  return out;
}

}  // namespace peakon
