#pragma once

#include <algorithm>
#include <vector>

#include "peakon/moments.hpp"
#include "support.hpp"

// Exact rational references: determinants by fraction-free elimination and
// the Weyl function from both of its closed forms.
namespace peakon::testing {

// Fraction-free Bareiss determinant, exact over the rationals.
inline Rational bareiss(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline Rational hankel(const std::vector<Rational>& s, std::size_t k, std::size_t shift) {
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = s[i + j + shift];
  return bareiss(a);
}

// z M(z) from the continued fraction, exactly
inline Rational zM_from_string(const BasicStringCoefficients<Rational>& c, const Rational& z) {
  const std::size_t N = c.m.size();
  Rational f = -c.l[N];
  for (std::size_t n = N; n >= 1; --n) {
    f = c.m[n - 1] * z + 1 / f;
    f = -c.l[n - 1] + 1 / f;
  }
  return 1 + 1 / f;
}

inline Rational zM_from_measure(const std::vector<Rational>& sigma, const std::vector<Rational>& g,
                         const Rational& z) {
  Rational M = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) M += g[i] / (sigma[i] - z);
  return z * M;
}

struct RationalCase {
  std::vector<Rational> sigma, gammas;
};

inline RationalCase random_rational(testing::Rng& rng, std::size_t n, bool mixed) {
  RationalCase c;
  std::vector<long> picks;
  while (c.sigma.size() < n) {
    long num = static_cast<long>(testing::uniform_index(rng, 1, 40));
    if (mixed && (rng() & 1u)) num = -num;
    if (std::find(picks.begin(), picks.end(), num) != picks.end()) continue;
    picks.push_back(num);
    c.sigma.emplace_back(num, 8);
  }
  std::sort(c.sigma.begin(), c.sigma.end());
  for (std::size_t i = 0; i < n; ++i)
    c.gammas.emplace_back(static_cast<long>(testing::uniform_index(rng, 1, 64)), 16);
  for (auto& x : c.sigma) x.canonicalize();
  for (auto& x : c.gammas) x.canonicalize();
  return c;
}

inline std::vector<double> as_double(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}


// s_0 = 1 + sum gamma, s_k = sum gamma lambda^k, k = 0..K
inline std::vector<Rational> exact_moments(const RationalCase& c, std::size_t K) {
  std::vector<Rational> s(K + 1, 0);
  s[0] = 1;
  for (std::size_t i = 0; i < c.sigma.size(); ++i) {
    Rational pw = 1;
    for (std::size_t k = 0; k <= K; ++k) {
      s[k] += c.gammas[i] * pw;
      pw *= c.sigma[i];
    }
  }
  return s;
}

}  // namespace peakon::testing
