#include "peakon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace peakon {

namespace {

constexpr const char* kModule = "dynamics";

PhaseVelocity peakon_rhs(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = p.size();
  PhaseVelocity v{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = q[i] - q[k];
      const double e = std::exp(-std::fabs(d));
      v.dq[i] += p[k] * e;
      if (d > 0.0)
        v.dp[i] += p[i] * p[k] * e;
      else if (d < 0.0)
        v.dp[i] -= p[i] * p[k] * e;
    }
  }
  return v;
}

PhaseVelocity general_rhs(const KernelParams& params, std::span<const double> p,
                          std::span<const double> q) {
  const std::size_t n = p.size();
  PhaseVelocity v{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = q[i] - q[k];
      v.dq[i] += p[k] * params.G(d);
      v.dp[i] -= p[i] * p[k] * params.dG(d);
    }
  }
  return v;
}

// State layout: y = (q_1, g_1..g_{N-1}, p_1..p_N) with g_n = q_{n+1} - q_n.
class GapSystem {
 public:
  GapSystem(const KernelParams& params, std::size_t n) : params_(params), n_(n), dist_(n * n) {}

  std::size_t dim() const { return n_ == 0 ? 0 : 2 * n_; }

  static std::vector<double> pack(const PeakonConfig& c) {
    const std::size_t n = c.size();
    std::vector<double> y(n == 0 ? 0 : 2 * n);
    if (n == 0) return y;
    y[0] = c[0].q;
    for (std::size_t i = 1; i < n; ++i) y[i] = c[i].q - c[i - 1].q;
    for (std::size_t i = 0; i < n; ++i) y[n + i] = c[i].p;
    return y;
  }

  PeakonConfig unpack(std::span<const double> y) const {
    std::vector<Peak> peaks(n_);
    double q = n_ ? y[0] : 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i > 0) q += y[i];
      peaks[i] = {y[n_ + i], q};
    }
    return PeakonConfig(std::move(peaks));
  }

  double min_gap(std::span<const double> y, std::size_t* where = nullptr) const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n_; ++i)
      if (y[i] < g) {
        g = y[i];
        if (where) *where = i - 1;
      }
    return g;
  }

  double max_mass(std::span<const double> y) const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) m = std::max(m, std::fabs(y[n_ + i]));
    return m;
  }

  void eval(std::span<const double> y, std::span<double> dy) {
    if (n_ == 0) return;
    const double* g = y.data();
    const double* p = y.data() + n_;
    // signed distances q_i - q_k accumulated from the gaps
    for (std::size_t i = 0; i < n_; ++i) {
      dist_[i * n_ + i] = 0.0;
      double acc = 0.0;
      for (std::size_t k = i + 1; k < n_; ++k) {
        acc += g[k];
        dist_[i * n_ + k] = -acc;
        dist_[k * n_ + i] = acc;
      }
    }
    if (params_.is_peakon()) {
      for (std::size_t i = 0; i < n_; ++i) {
        double dq = 0.0;
        double dp = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
          const double d = dist_[i * n_ + k];
          const double e = std::exp(-std::fabs(d));
          dq += p[k] * e;
          if (k < i) dp += p[k] * e;
          if (k > i) dp -= p[k] * e;
        }
        if (i == 0) dy[0] = dq;
        dy[n_ + i] = p[i] * dp;
      }
      // dg_n = (1 - e^{-g_n}) [sum_{k>n} p_k e^{-(q_k - q_{n+1})} - sum_{k<=n} p_k e^{-(q_n - q_k)}],
      // free of the cancellation in dq_{n+1} - dq_n.
      for (std::size_t i = 1; i < n_; ++i) {
        double right = 0.0;
        double left = 0.0;
        for (std::size_t k = i; k < n_; ++k) right += p[k] * std::exp(dist_[i * n_ + k]);
        for (std::size_t k = 0; k < i; ++k) left += p[k] * std::exp(-dist_[(i - 1) * n_ + k]);
        dy[i] = -std::expm1(-g[i]) * (right - left);
      }
    } else {
      std::vector<double> dq(n_, 0.0);
      for (std::size_t i = 0; i < n_; ++i) {
        double dp = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
          const double d = dist_[i * n_ + k];
          dq[i] += p[k] * params_.G(d);
          dp -= p[k] * params_.dG(d);
        }
        dy[n_ + i] = p[i] * dp;
      }
      dy[0] = dq[0];
      for (std::size_t i = 1; i < n_; ++i) dy[i] = dq[i] - dq[i - 1];
    }
  }

 private:
  const KernelParams& params_;
  std::size_t n_;
  std::vector<double> dist_;
};

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Hairer's continuous extension of an accepted step [t, t + h].
struct DenseStep {
  double t = 0.0;
  double h = 0.0;
  std::vector<double> r1, r2, r3, r4, r5;

  void eval(double tt, std::span<double> out) const {
    const double th = (tt - t) / h;
    const double th1 = 1.0 - th;
    for (std::size_t i = 0; i < r1.size(); ++i)
      out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
  }
};

double relative_drift(double value, double reference, double scale) {
  return std::fabs(value - reference) / scale;
}

}  // namespace

PhaseVelocity rhs(const KernelParams& params, std::span<const double> p,
                  std::span<const double> q) {
  params.validate();
  if (p.size() != q.size()) throw InvalidInput(kModule, "mass/position length mismatch");
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = i + 1; k < q.size(); ++k)
      if (q[i] == q[k]) throw InvalidInput(kModule, "coincident positions");
  return params.is_peakon() ? peakon_rhs(p, q) : general_rhs(params, p, q);
}

PhaseVelocity rhs(const KernelParams& params, const PeakonConfig& config) {
  const auto p = config.masses();
  const auto q = config.positions();
  return rhs(params, p, q);
}

Trajectory integrate(const KernelParams& params, const PeakonConfig& config0, double t_final,
                     const IntegrateOptions& options) {
  params.validate();
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw InvalidInput(kModule, "t_final must be finite and nonnegative");
  if (!(options.rtol > 0.0) || !(options.atol > 0.0))
    throw InvalidInput(kModule, "tolerances must be positive");
  std::vector<double> outputs = options.output_times;
  for (double t : outputs)
    if (!(t >= 0.0 && t <= t_final)) throw InvalidInput(kModule, "output time outside [0, t_final]");
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  const bool every_step = outputs.empty();

  Trajectory traj;
  const std::size_t n = config0.size();
  GapSystem sys(params, n);
  const std::size_t dim = sys.dim();

  const double h0 = cf_hamiltonian(params, config0);
  double p0 = 0.0, p_abs = 0.0;
  for (const auto& pk : config0) {
    p0 += pk.p;
    p_abs += std::fabs(pk.p);
  }
  const double h_scale = std::fabs(h0) > 0.0 ? std::fabs(h0) : 1.0;
  const double p_scale = p_abs > 0.0 ? p_abs : 1.0;

  std::size_t next_out = 0;
  auto record = [&](double t, const PeakonConfig& c) {
    if (!traj.times.empty() && !(t > traj.times.back())) return;
    traj.times.push_back(t);
    traj.states.push_back(c);
  };
  if (every_step || (next_out < outputs.size() && outputs[0] == 0.0)) {
    record(0.0, config0);
    if (!every_step) ++next_out;
  }
  if (dim == 0 || t_final == 0.0) {
    if (!every_step)
      for (; next_out < outputs.size(); ++next_out) record(outputs[next_out], config0);
    else if (t_final > 0.0)
      record(t_final, config0);
    return traj;
  }

  std::vector<double> y = GapSystem::pack(config0);
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  std::vector<double> ytmp(dim), ynew(dim), sample(dim);
  sys.eval(y, k1);

  auto err_scale = [&](double a, double b) {
    return options.atol + options.rtol * std::max(std::fabs(a), std::fabs(b));
  };

  double h = options.initial_step;
  if (!(h > 0.0)) {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double sc = err_scale(y[i], y[i]);
      d0 = std::max(d0, std::fabs(y[i]) / sc);
      d1n = std::max(d1n, std::fabs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min(h, 0.1);
  }
  h = std::min(h, t_final);

  double t = 0.0;
  bool last_rejected = false;
  DenseStep dense;
  dense.r1.resize(dim);
  dense.r2.resize(dim);
  dense.r3.resize(dim);
  dense.r4.resize(dim);
  dense.r5.resize(dim);

  auto threshold_crossed = [&](std::span<const double> s) {
    return (n > 1 && sys.min_gap(s) < options.collision_gap) ||
           sys.max_mass(s) > options.mass_limit;
  };

  while (t < t_final) {
    if (traj.accepted_steps + traj.rejected_steps >= options.max_steps)
      throw NumericalFailure(kModule, "maximum number of steps exceeded");
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(t)))
      throw NumericalFailure(kModule, "step size underflow at t = " + std::to_string(t));
    if (t + h > t_final) h = t_final - t;

    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    sys.eval(ytmp, k2);
    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    sys.eval(ytmp, k3);
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    sys.eval(ytmp, k4);
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    sys.eval(ytmp, k5);
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    sys.eval(ytmp, k6);
    for (std::size_t i = 0; i < dim; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    sys.eval(ynew, k7);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < dim; ++i) {
      const double ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      if (!std::isfinite(ynew[i]) || !std::isfinite(ei)) finite = false;
      err = std::max(err, std::fabs(ei) / err_scale(y[i], ynew[i]));
    }
    if (!finite) err = std::numeric_limits<double>::infinity();

    if (err > 1.0) {
      ++traj.rejected_steps;
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= fac;
      last_rejected = true;
      continue;
    }

    ++traj.accepted_steps;
    for (std::size_t i = 0; i < dim; ++i) {
      const double dy = ynew[i] - y[i];
      const double bspl = h * k1[i] - dy;
      dense.r1[i] = y[i];
      dense.r2[i] = dy;
      dense.r3[i] = bspl;
      dense.r4[i] = dy - h * k7[i] - bspl;
      dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                         d7 * k7[i]);
    }
    dense.t = t;
    dense.h = h;
    const double t_new = (t + h >= t_final) ? t_final : t + h;

    if (threshold_crossed(ynew)) {
      // the sign change lies in (t, t_new]; bisect on the continuous extension
      double lo = t, hi = t_new;
      for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                                                       std::max(1.0, std::fabs(hi));
           ++it) {
        const double mid = 0.5 * (lo + hi);
        dense.eval(mid, sample);
        (threshold_crossed(sample) ? hi : lo) = mid;
      }
      dense.eval(hi, sample);
      if (hi == t_new) sample = ynew;
      for (; !every_step && next_out < outputs.size() && outputs[next_out] < hi; ++next_out) {
        dense.eval(outputs[next_out], ytmp);
        record(outputs[next_out], sys.unpack(ytmp));
      }
      std::size_t where = 0;
      const double gap = n > 1 ? sys.min_gap(sample, &where) : 0.0;
      CollisionEvent ev;
      ev.detection_time = hi;
      ev.indices = {where, where + 1};
      ev.gap = gap;
      ev.time = hi;
      if (n > 1) {
        sys.eval(sample, k2);
        const double closing = k2[where + 1];
        // peakon gaps close quadratically in the remaining time (1 - e^{-g} ~ g
        // multiplies a diverging bracket); other kernels are treated as linear
        const double order = params.is_peakon() ? 2.0 : 1.0;
        if (closing < 0.0) ev.time = hi + order * gap / (-closing);
      }
      traj.events.push_back(ev);
      record(hi, sys.unpack(sample));
      return traj;
    }

    if (every_step) {
      record(t_new, sys.unpack(ynew));
    } else {
      for (; next_out < outputs.size() && outputs[next_out] <= t_new; ++next_out) {
        if (outputs[next_out] == t_new) {
          record(t_new, sys.unpack(ynew));
        } else {
          dense.eval(outputs[next_out], sample);
          record(outputs[next_out], sys.unpack(sample));
        }
      }
    }

    const PeakonConfig state = sys.unpack(ynew);
    double psum = 0.0;
    for (const auto& pk : state) psum += pk.p;
    traj.hamiltonian_drift =
        std::max(traj.hamiltonian_drift, relative_drift(cf_hamiltonian(params, state), h0, h_scale));
    traj.momentum_drift = std::max(traj.momentum_drift, relative_drift(psum, p0, p_scale));

    y.swap(ynew);
    k1.swap(k7);
    t = t_new;

    double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::min(last_rejected ? 1.0 : 5.0, std::max(0.2, fac));
    h *= fac;
    last_rejected = false;
  }
  return traj;
}

TwoPeakonReduced TwoPeakonReduced::from_config(const PeakonConfig& config) {
  if (config.size() != 2) throw InvalidInput(kModule, "two-peakon data required");
  TwoPeakonReduced r;
  r.P0 = config[0].p + config[1].p;
  r.P = config[1].p - config[0].p;
  r.Q = config[1].q - config[0].q;
  r.H0sq = hamiltonian(config);
  // 4 H - P0^2 = P^2 (1 - e^{-Q}) + P0^2 e^{-Q}, both terms nonnegative
  r.h0 = std::sqrt(r.P * r.P * (-std::expm1(-r.Q)) + r.P0 * r.P0 * std::exp(-r.Q));
  return r;
}

double TwoPeakonReduced::P_at(double t) const {
  const double eps = std::exp(-h0 * t);
  const double plus = P + h0;
  const double minus = P - h0;
  return h0 * (plus + minus * eps) / (plus - minus * eps);
}

double TwoPeakonReduced::Q_at(double t) const {
  const double r = (P - h0) / (P + h0);
  const double alpha = (P0 + h0) / (P0 - h0);
  const double eps = std::exp(-h0 * t);
  return Q + h0 * t + std::log(std::fabs(1.0 - alpha * r * eps)) +
         std::log(std::fabs(1.0 - r / alpha * eps)) - std::log(std::fabs(1.0 - alpha * r)) -
         std::log(std::fabs(1.0 - r / alpha));
}

std::optional<double> TwoPeakonReduced::blowup_time() const {
  const double prod = (P - h0) * (P + h0);
  if (!(prod > 0.0)) return std::nullopt;
  const double t = std::log((P - h0) / (P + h0)) / h0;
  if (!(t > 0.0)) return std::nullopt;
  return t;
}

std::optional<double> two_peakon_blowup_time(const PeakonConfig& init) {
  return TwoPeakonReduced::from_config(init).blowup_time();
}

PeakonConfig two_peakon_exact(const PeakonConfig& init, double t) {
  const TwoPeakonReduced red = TwoPeakonReduced::from_config(init);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput(kModule, "time must be nonnegative");
  if (t == 0.0) return init;
  if (auto tb = red.blowup_time(); tb && t >= *tb)
    throw InvalidInput(kModule, "time at or after the two-peakon blow-up");

  const double P = red.P_at(t);
  const double Q = red.Q_at(t);
  double S = init[0].q + init[1].q;
  if (red.P0 != 0.0) {
    auto integrand = [&](double s) { return 1.0 + std::exp(-red.Q_at(s)); };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, t, 15, 1e-15);
    S += red.P0 * integral;
  }
  const double p1 = 0.5 * (red.P0 - P);
  const double p2 = 0.5 * (red.P0 + P);
  return PeakonConfig({{p1, 0.5 * (S - Q)}, {p2, 0.5 * (S + Q)}});
}

}  // namespace peakon
