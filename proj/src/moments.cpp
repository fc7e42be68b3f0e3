#include "peakon/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "peakon/error.hpp"

namespace peakon {

namespace {

constexpr const char* kModule = "moment-inverse";
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs(double x) { return x == 0.0 ? kNegInf : std::log(std::fabs(x)); }
double log_abs(const Real& x) {
  return x == 0 ? kNegInf : to_double(boost::multiprecision::log(boost::multiprecision::abs(x)));
}
double log_abs(const Rational& x) {
  if (sgn(x) == 0) return kNegInf;
  auto log_z = [](const mpz_class& z) {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
  };
  return log_z(x.get_num()) - log_z(x.get_den());
}

template <class T>
T abs_of(const T& x) {
  if constexpr (std::is_same_v<T, double>)
    return std::fabs(x);
  else if constexpr (std::is_same_v<T, Real>)
    return boost::multiprecision::abs(x);
  else
    return abs(x);
}

template <class T>
bool is_zero(const T& x) {
  return x == 0;
}

Real to_real(const Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

template <class T>
void validate_spectrum(std::span<const T> sigma, std::span<const T> gammas) {
  if (sigma.size() != gammas.size())
    throw InvalidInput(kModule, "eigenvalue/norming constant count mismatch");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (is_zero(sigma[i])) throw InvalidInput(kModule, "zero eigenvalue");
    if (!(gammas[i] > 0)) throw InvalidInput(kModule, "norming constants must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (sigma[i] == sigma[j]) throw InvalidInput(kModule, "repeated eigenvalue");
  }
}

// Determinant by elimination: partial pivoting for floating types, first
// nonzero pivot for exact rationals.
template <class T>
T determinant(std::vector<T> a, std::size_t n) {
  T det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    if constexpr (std::is_same_v<T, Rational>) {
      while (piv < n && is_zero(a[piv * n + c])) ++piv;
      if (piv == n) return T(0);
    } else {
      for (std::size_t r = c + 1; r < n; ++r)
        if (abs_of(a[r * n + c]) > abs_of(a[piv * n + c])) piv = r;
      if (is_zero(a[piv * n + c])) return T(0);
    }
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    const T pivot = a[c * n + c];
    det *= pivot;
    for (std::size_t r = c + 1; r < n; ++r) {
      const T f = a[r * n + c] / pivot;
      if (is_zero(f)) continue;
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

// log of max over permutations of prod |a_{i, pi(i)}|, by DP over column subsets.
double log_max_monomial(const std::vector<double>& loga, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> dp(std::size_t{1} << n, kNegInf);
  dp[0] = 0.0;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == kNegInf) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row >= n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const double v = dp[mask] + loga[row * n + c];
      auto& slot = dp[mask | (std::size_t{1} << c)];
      slot = std::max(slot, v);
    }
  }
  return dp.back();
}

template <class T>
PeakonConfigX peaks_from_lengths(std::span<const T> m, std::span<const T> l) {
  const std::size_t n = m.size();
  if (l.size() != n + 1) throw InvalidInput(kModule, "need one more l than m");
  T total = 0;
  for (const T& x : l) total += x;
  if (!(abs_of(T(total - 1)) <= T(1e-10))) throw InvalidInput(kModule, "sum of l differs from 1");
  std::vector<T> left(n + 1, T(0)), right(n + 2, T(0));
  for (std::size_t k = 0; k < n; ++k) left[k + 1] = left[k] + l[k];
  for (std::size_t k = n + 1; k-- > 0;) right[k] = right[k + 1] + l[k];
  std::vector<PeakX> peaks;
  peaks.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const T L = left[k + 1];
    const T R = right[k + 1];
    if (!(L > 0) || !(R > 0))
      throw InvalidInput(kModule, "partial string lengths outside (0, 1)");
    if (is_zero(m[k])) throw InvalidInput(kModule, "zero string mass");
    const Real Lr(L), Rr(R);
    const Real q = boost::multiprecision::log(Lr) - boost::multiprecision::log(Rr);
    const Real s = Lr + Rr;
    const Real p = Real(m[k]) * Lr * Rr / (2 * s * s);
    if (!peaks.empty() && !(peaks.back().q < q))
      throw InvalidInput(kModule, "recovered positions are not increasing");
    peaks.push_back({p, q});
  }
  return PeakonConfigX(std::move(peaks));
}

}  // namespace

template <class T>
BasicMomentSequence<T> moments(std::span<const T> sigma, std::span<const T> gammas, std::size_t K) {
  validate_spectrum(sigma, gammas);
  BasicMomentSequence<T> out;
  out.s.assign(K + 1, T(0));
  out.s[0] = 1;
  std::vector<T> power(gammas.begin(), gammas.end());
  for (const T& g : gammas) out.s[0] += g;
  for (std::size_t k = 1; k <= K; ++k) {
    T acc = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      power[i] *= sigma[i];
      acc += power[i];
    }
    out.s[k] = acc;
  }
  return out;
}

MomentSequence moments(std::span<const double> sigma, std::span<const double> gammas,
                       std::size_t K) {
  return moments<double>(sigma, gammas, K);
}

template <class T>
BasicHankelTable<T> hankel_determinants(const BasicMomentSequence<T>& s, std::size_t N) {
  if (s.s.size() < 2 * N + 1) throw InvalidInput(kModule, "need moments s_0..s_{2N}");
  std::vector<double> logs(s.s.size());
  for (std::size_t i = 0; i < s.s.size(); ++i) logs[i] = log_abs(s.s[i]);
  BasicHankelTable<T> t;
  for (std::size_t k = 0; k <= N + 1; ++k) {
    for (int shift = 0; shift <= 1; ++shift) {
      if (shift == 1 && k > N) continue;
      std::vector<T> a(k * k);
      std::vector<double> la(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          a[i * k + j] = s.s[i + j + shift];
          la[i * k + j] = logs[i + j + shift];
        }
      const T d = k == 0 ? T(1) : determinant(std::move(a), k);
      const double ls = log_max_monomial(la, k);
      if (shift == 0) {
        t.delta0.push_back(d);
        t.log_scale0.push_back(ls);
      } else {
        t.delta1.push_back(d);
        t.log_scale1.push_back(ls);
      }
    }
  }
  return t;
}

HankelTable hankel_determinants(const MomentSequence& s, std::size_t N) {
  return hankel_determinants<double>(s, N);
}

template <class T>
BasicHankelTable<T> hankel_determinants_from_measure(std::span<const T> sigma,
                                                     std::span<const T> gammas) {
  validate_spectrum(sigma, gammas);
  const std::size_t N = sigma.size();
  // atoms of rho: index 0 is delta_0, then the spectrum
  std::vector<T> x(N + 1), w(N + 1);
  x[0] = 0;
  w[0] = 1;
  for (std::size_t i = 0; i < N; ++i) {
    x[i + 1] = sigma[i];
    w[i + 1] = gammas[i];
  }
  BasicHankelTable<T> t;
  t.delta0.assign(N + 2, T(0));
  t.delta1.assign(N + 1, T(0));
  std::vector<double> max0(N + 2, kNegInf), max1(N + 1, kNegInf);
  t.delta0[0] = 1;
  t.delta1[0] = 1;
  max0[0] = max1[0] = 0.0;

  std::vector<std::size_t> chosen;
  chosen.reserve(N + 1);
  // depth-first over subsets in increasing index order; prod and xprod are
  // the running prod w prod V^2 and prod x
  auto visit = [&](auto&& self, std::size_t start, const T& prod, const T& xprod,
                   bool has_origin) -> void {
    for (std::size_t a = start; a <= N; ++a) {
      T next = prod * w[a];
      for (std::size_t j : chosen) {
        const T d = x[a] - x[j];
        next *= d * d;
      }
      const std::size_t k = chosen.size() + 1;
      t.delta0[k] += next;
      max0[k] = std::max(max0[k], log_abs(next));
      const bool origin = has_origin || a == 0;
      T nx = xprod;
      if (!origin) {
        nx *= x[a];
        const T term = next * nx;
        t.delta1[k] += term;
        max1[k] = std::max(max1[k], log_abs(term));
      }
      chosen.push_back(a);
      self(self, a + 1, next, nx, origin);
      chosen.pop_back();
    }
  };
  visit(visit, 0, T(1), T(1), false);
  t.log_scale0 = std::move(max0);
  t.log_scale1 = std::move(max1);
  return t;
}

template <class T>
std::variant<BasicStringCoefficients<T>, CollisionSignal> stieltjes_coefficients(
    const BasicHankelTable<T>& table, std::size_t N, double tolerance) {
  if (table.delta0.size() < N + 2 || table.delta1.size() < N + 1)
    throw InvalidInput(kModule, "Hankel table too short for the requested order");
  const double log_tol = tolerance > 0.0 ? std::log(tolerance) : kNegInf;
  auto negligible = [&](const T& d, double log_scale) {
    if (tolerance <= 0.0) return is_zero(d);
    return is_zero(d) || log_abs(d) < log_tol + log_scale;
  };
  for (std::size_t k = 1; k <= N + 1; ++k)
    if (negligible(table.delta0[k], table.log_scale0[k]))
      throw NumericalFailure(kModule, "vanishing Delta0 determinant (ill-conditioned data)");
  for (std::size_t k = 1; k <= N; ++k) {
    if (negligible(table.delta1[k], table.log_scale1[k])) {
      CollisionSignal sig;
      sig.determinant_index = k;
      sig.peaks = {k - 1, k};
      sig.relative_size =
          is_zero(table.delta1[k]) ? 0.0
                                   : std::exp(log_abs(table.delta1[k]) - table.log_scale1[k]);
      return sig;
    }
  }
  BasicStringCoefficients<T> c;
  for (std::size_t n = 1; n <= N; ++n) {
    const T d0 = table.delta0[n];
    c.m.push_back(d0 * d0 / (table.delta1[n - 1] * table.delta1[n]));
  }
  for (std::size_t n = 1; n <= N + 1; ++n) {
    const T d1 = table.delta1[n - 1];
    c.l.push_back(d1 * d1 / (table.delta0[n - 1] * table.delta0[n]));
  }
  c.v.assign(N, T(0));
  return c;
}

std::variant<StringCoefficients, CollisionSignal> stieltjes_coefficients(const HankelTable& table,
                                                                         std::size_t N) {
  return stieltjes_coefficients<double>(table, N, kCollisionTolerance);
}

PeakonConfig peakons_from_coefficients(std::span<const double> m, std::span<const double> l) {
  return config_cast<double>(peaks_from_lengths<double>(m, l));
}

PeakonConfigX peakons_from_coefficients(std::span<const Real> m, std::span<const Real> l) {
  return peaks_from_lengths<Real>(m, l);
}

InversionX invert_spectral(std::span<const Real> sigma, std::span<const Real> gammas,
                           const InversionOptions& options) {
  if (options.arithmetic == Arithmetic::rational)
    throw InvalidInput(kModule, "rational arithmetic needs exactly representable input");
  validate_spectrum(sigma, gammas);
  const std::size_t N = sigma.size();
  if (N > kMaxFloatingOrder)
    throw InvalidInput(kModule, "floating-point inversion is capped at N = 16");
  if (N == 0) return PeakonConfigX();
  const BasicHankelTable<Real> table =
      options.route == HankelRoute::heine
          ? hankel_determinants_from_measure<Real>(sigma, gammas)
          : hankel_determinants(moments<Real>(sigma, gammas, 2 * N), N);
  auto coeffs = stieltjes_coefficients(table, N, options.collision_tolerance);
  if (auto* sig = std::get_if<CollisionSignal>(&coeffs)) return *sig;
  const auto& c = std::get<StringCoefficientsX>(coeffs);
  return peakons_from_coefficients(std::span<const Real>(c.m), std::span<const Real>(c.l));
}

Inversion invert_spectral(std::span<const double> sigma, std::span<const double> gammas,
                          const InversionOptions& options) {
  if (options.arithmetic == Arithmetic::rational) {
    std::vector<Rational> s(sigma.begin(), sigma.end()), g(gammas.begin(), gammas.end());
    auto r = invert_spectral_rational(s, g);
    if (auto* sig = std::get_if<CollisionSignal>(&r)) return *sig;
    return config_cast<double>(std::get<RationalInversion>(r).peaks);
  }
  const auto sx = peakon::to_real(sigma);
  const auto gx = peakon::to_real(gammas);
  auto r = invert_spectral(std::span<const Real>(sx), std::span<const Real>(gx), options);
  if (auto* sig = std::get_if<CollisionSignal>(&r)) return *sig;
  return config_cast<double>(std::get<PeakonConfigX>(r));
}

std::variant<RationalInversion, CollisionSignal> invert_spectral_rational(
    std::span<const Rational> sigma, std::span<const Rational> gammas) {
  validate_spectrum(sigma, gammas);
  const std::size_t N = sigma.size();
  RationalInversion out;
  out.table = hankel_determinants_from_measure<Rational>(sigma, gammas);
  const auto via_moments = hankel_determinants(moments<Rational>(sigma, gammas, 2 * N), N);
  if (via_moments.delta0 != out.table.delta0 || via_moments.delta1 != out.table.delta1)
    throw NumericalFailure(kModule, "exact Hankel routes disagree");
  auto coeffs = stieltjes_coefficients(out.table, N, 0.0);
  if (auto* sig = std::get_if<CollisionSignal>(&coeffs)) return *sig;
  out.coefficients = std::get<BasicStringCoefficients<Rational>>(coeffs);
  Rational total = 0;
  for (const Rational& x : out.coefficients.l) total += x;
  if (total != 1) throw NumericalFailure(kModule, "exact string lengths do not sum to 1");
  std::vector<Real> m, l;
  for (const Rational& x : out.coefficients.m) m.push_back(to_real(x));
  for (const Rational& x : out.coefficients.l) l.push_back(to_real(x));
  out.peaks = peakons_from_coefficients(std::span<const Real>(m), std::span<const Real>(l));
  return out;
}

#define PEAKON_INSTANTIATE(T)                                                                  \
  template BasicMomentSequence<T> moments<T>(std::span<const T>, std::span<const T>,         \
                                               std::size_t);                                 \
  template BasicHankelTable<T> hankel_determinants<T>(const BasicMomentSequence<T>&,         \
                                                      std::size_t);                          \
  template BasicHankelTable<T> hankel_determinants_from_measure<T>(std::span<const T>,       \
                                                                   std::span<const T>);      \
  template std::variant<BasicStringCoefficients<T>, CollisionSignal> stieltjes_coefficients<T>( \
      const BasicHankelTable<T>&, std::size_t, double);

PEAKON_INSTANTIATE(double)
PEAKON_INSTANTIATE(Real)
PEAKON_INSTANTIATE(Rational)

#undef PEAKON_INSTANTIATE

}  // namespace peakon
