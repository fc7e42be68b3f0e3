#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracle_values.hpp"
#include "peakon/moments.hpp"
#include "peakon/spectral.hpp"
#include "support.hpp"

using namespace peakon;
using cplx = std::complex<double>;

namespace {

void check_against(const SpectralData& d, const double* ev, const double* g, const double* c,
                   double tol) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d.eigenvalues[i] == doctest::Approx(ev[i]).epsilon(tol));
    if (g) CHECK(d.gammas[i] == doctest::Approx(g[i]).epsilon(tol));
    if (c) CHECK(d.couplings[i] == doctest::Approx(c[i]).epsilon(tol));
  }
}

cplx random_point(testing::Rng& rng) {
  return {testing::uniform(rng, -5.0, 5.0), testing::uniform(rng, 0.05, 5.0) *
                                                ((rng() & 1u) ? 1.0 : -1.0)};
}

}  // namespace

TEST_CASE("unit peakon Jost solutions") {
  const PeakonConfig one{{1.0, 0.0}};
  const JostSolution plus = jost_solution(one, JostDirection::plus);
  for (double z : {0.2, 0.7, -1.3})
    for (double x : {-3.0, -0.5}) {
      const double want = 2 * z * std::exp(x / 2) + (1 - 2 * z) * std::exp(-x / 2);
      CHECK(plus(z, x) == doctest::Approx(want).epsilon(1e-14));
    }
  const JostSolution minus = jost_solution(PeakonConfig{{1.0, 0.8}}, JostDirection::minus);
  for (double x : {-2.0, 0.3, 1.5, 4.0}) {
    const double want = x < 0.8 ? std::exp(x / 2) : std::exp(0.8 - x / 2);
    CHECK(minus(0.5, x) == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("at z = 0 every interface is transparent") {
  testing::Rng rng(1);
  testing::ConfigShape shape;
  shape.mixed_signs = true;
  for (int trial = 0; trial < 10; ++trial) {
    const PeakonConfig c = testing::random_config(rng, shape);
    const auto minus = jost_solution(c, JostDirection::minus);
    const auto plus = jost_solution(c, JostDirection::plus);
    for (double x : {-7.0, 0.0, 3.0, 12.0}) {
      CHECK(minus(0.0, x) == doctest::Approx(std::exp(x / 2)).epsilon(1e-14));
      CHECK(plus(0.0, x) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-14));
    }
    CHECK(wronskian_polynomial(c)(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("Wronskian closed forms") {
  const Polynomial w1 = wronskian_polynomial(PeakonConfig{{1.0, 0.0}});
  REQUIRE(w1.degree() == 1);
  CHECK(to_double(w1[0]) == doctest::Approx(1.0));
  CHECK(to_double(w1[1]) == doctest::Approx(-2.0));
  const PeakonConfig anti{{1.5, -0.7}, {-1.5, 0.7}};
  const Polynomial w2 = wronskian_polynomial(anti);
  const double H = hamiltonian(anti);
  REQUIRE(w2.degree() == 2);
  CHECK(std::fabs(to_double(w2[1])) < 1e-14);
  CHECK(to_double(w2[2]) == doctest::Approx(-4.0 * H));
}

TEST_CASE("Wronskian equals phi_+ phi_-' - phi_+' phi_- at every x") {
  const PeakonConfig c{{1.0, -1.0}, {-0.4, 0.3}, {2.0, 1.1}};
  const SpectralProblem pr = SpectralProblem::from(c);
  const auto minus = jost_solution(pr, JostDirection::minus);
  const auto plus = jost_solution(pr, JostDirection::plus);
  const Polynomial w = wronskian_polynomial(pr);
  for (double z : {-0.7, 0.15, 1.9})
    for (double x : {-3.0, -0.2, 0.9, 5.0}) {
      const Real Z(z), X(x);
      const Real W = plus(Z, X) * minus.slope(Z, X) - plus.slope(Z, X) * minus(Z, X);
      CHECK(abs(W - w(Z)) <= Real("1e-40") * w.magnitude(Z));
    }
}

TEST_CASE("single peakon spectral data") {
  for (double a : {0.0, -1.3, 2.5}) {
    const SpectralData d = spectral_data(PeakonConfig{{1.0, a}});
    REQUIRE(d.size() == 1);
    CHECK(d.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.gammas[0] == doctest::Approx(std::exp(-a)).epsilon(1e-14));
    CHECK(d.couplings[0] == doctest::Approx(std::exp(-a)).epsilon(1e-14));
  }
  CHECK(eigenvalues(PeakonConfig{{2.5, 1.0}})[0] == doctest::Approx(0.2));
  const StringCoefficients sc = string_coefficients(PeakonConfig{{1.0, 0.0}});
  REQUIRE(sc.m.size() == 1);
  CHECK(sc.m[0] == doctest::Approx(8.0));
  CHECK(sc.l[0] == doctest::Approx(0.5));
  CHECK(sc.l[1] == doctest::Approx(0.5));
}

TEST_CASE("spectral data against the independent transfer-matrix oracle") {
  const PeakonConfig pair{{1.0, -0.5}, {0.7, 0.8}};
  check_against(spectral_data(pair), oracle::kPairEigenvalues, oracle::kPairGammas,
                oracle::kPairCouplings, 1e-12);
  const PeakonConfig mixed{{1.0, -0.5}, {-0.7, 0.8}};
  check_against(spectral_data(mixed), oracle::kMixedPairEigenvalues, oracle::kMixedPairGammas,
                oracle::kMixedPairCouplings, 1e-12);
  const PeakonConfig train{{3.0, -10.0}, {2.0, 0.0}, {1.0, 10.0}};
  check_against(spectral_data(train), oracle::kTrainEigenvalues, nullptr, oracle::kTrainCouplings,
                1e-11);
  const PeakonConfig triple{{1.0, -1.0}, {0.5, 0.0}, {2.0, 1.5}};
  check_against(spectral_data(triple), oracle::kTripleEigenvalues, oracle::kTripleGammas, nullptr,
                1e-12);
  const auto anti = eigenvalues(PeakonConfig{{1.0, -1.0}, {-1.0, 1.0}});
  CHECK(anti[0] == doctest::Approx(oracle::kAntipeakonEigenvalues[0]).epsilon(1e-14));
  CHECK(anti[1] == doctest::Approx(oracle::kAntipeakonEigenvalues[1]).epsilon(1e-14));
}

TEST_CASE("eigenvalues are real, simple, polished and positive for positive masses") {
  testing::Rng rng(2718);
  for (bool mixed : {false, true}) {
    testing::ConfigShape shape;
    shape.mixed_signs = mixed;
    for (int trial = 0; trial < 40; ++trial) {
      const PeakonConfig c = testing::random_config(rng, shape);
      const SpectralProblem pr = SpectralProblem::from(c);
      const Polynomial w = wronskian_polynomial(pr);
      const auto sigma = eigenvalues(pr);
      REQUIRE(sigma.size() == c.size());
      std::size_t positive_masses = 0, positive_eigs = 0;
      for (const auto& pk : c) positive_masses += pk.p > 0;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        CHECK(abs(w(sigma[i])) <= Real("1e-12") * w.magnitude(sigma[i]));
        if (i > 0) CHECK(sigma[i - 1] < sigma[i]);
        positive_eigs += sigma[i] > 0;
      }
      // signs of eigenvalues follow signs of masses
      CHECK(positive_eigs == positive_masses);
      for (const Real& g : norming_constants(pr, sigma)) CHECK(g > 0);
    }
  }
}

TEST_CASE("trace identities of the spectrum") {
  testing::Rng rng(3141);
  testing::ConfigShape shape;
  shape.mixed_signs = true;
  for (int trial = 0; trial < 40; ++trial) {
    const PeakonConfig c = testing::random_config(rng, shape);
    const auto sigma = eigenvalues(c);
    double s1 = 0, s2 = 0, p = 0;
    for (double l : sigma) {
      s1 += 1 / l;
      s2 += 1 / (l * l);
    }
    for (const auto& pk : c) p += pk.p;
    CHECK(s1 == doctest::Approx(2 * p).epsilon(1e-9));
    CHECK(s2 == doctest::Approx(8 * hamiltonian(c)).epsilon(1e-9));
  }
}

TEST_CASE("mass scaling and translation covariance") {
  testing::Rng rng(77);
  testing::ConfigShape shape;
  shape.n_max = 6;
  for (int trial = 0; trial < 20; ++trial) {
    const PeakonConfig c = testing::random_config(rng, shape);
    const double k = testing::uniform(rng, 0.3, 3.0), d = testing::uniform(rng, -4.0, 4.0);
    std::vector<Peak> scaled, shifted;
    for (const auto& pk : c) {
      scaled.push_back({k * pk.p, pk.q});
      shifted.push_back({pk.p, pk.q + d});
    }
    const SpectralData base = spectral_data(c);
    const SpectralData s = spectral_data(PeakonConfig(scaled));
    const SpectralData t = spectral_data(PeakonConfig(shifted));
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(s.eigenvalues[i] == doctest::Approx(base.eigenvalues[i] / k).epsilon(1e-12));
      CHECK(t.eigenvalues[i] == doctest::Approx(base.eigenvalues[i]).epsilon(1e-12));
      CHECK(t.couplings[i] == doctest::Approx(base.couplings[i] * std::exp(-d)).epsilon(1e-10));
    }
  }
}

TEST_CASE("string coefficients: total length one and Liouville weights") {
  testing::Rng rng(4);
  testing::ConfigShape shape;
  shape.mixed_signs = true;
  for (int trial = 0; trial < 30; ++trial) {
    const PeakonConfig c = testing::random_config(rng, shape);
    const StringCoefficients sc = string_coefficients(c);
    double total = 0;
    for (double l : sc.l) total += l;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    const DiscreteMeasure s = liouville_string(momentum_measure(c));
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(sc.m[i] == doctest::Approx(s[i].w).epsilon(1e-13));
  }
}

TEST_CASE("unit peakon Weyl function in both forms") {
  const PeakonConfig one{{1.0, 0.0}};
  const auto pf = WeylRepresentation::partial_fractions(spectral_data(one));
  const auto cf = WeylRepresentation::continued_fraction(string_coefficients(one));
  const cplx z(0.0, 1.0);
  const cplx want = 1.0 / (0.5 - z);
  CHECK(std::abs(weyl_eval(pf, z) - want) <= 1e-12);
  CHECK(std::abs(weyl_eval(cf, z) - want) <= 1e-12);
  CHECK_THROWS_AS(weyl_eval(pf, cplx(0.5, 0.0)), InvalidInput);
  CHECK_THROWS_AS(weyl_eval(cf, cplx(0.0, 0.0)), NumericalFailure);
}

TEST_CASE("Weyl function: forms agree, conjugate symmetry, Herglotz sign, Jost limit") {
  testing::Rng rng(1618);
  for (bool mixed : {false, true}) {
    testing::ConfigShape shape;
    shape.mixed_signs = mixed;
    for (int trial = 0; trial < 15; ++trial) {
      const PeakonConfig c = testing::random_config(rng, shape);
      const auto pf = WeylRepresentation::partial_fractions(spectral_data(SpectralProblem::from(c)));
      const auto cf = WeylRepresentation::continued_fraction(
          string_coefficients(SpectralProblem::from(c)));
      for (int i = 0; i < 20; ++i) {
        const cplx z = random_point(rng);
        const cplx a = weyl_eval(pf, z), b = weyl_eval(cf, z);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
        CHECK(std::abs(weyl_eval(pf, std::conj(z)) - std::conj(a)) <= 1e-14 * std::abs(a));
        if (!mixed) CHECK(z.imag() * a.imag() >= 0.0);
        const cplx j = weyl_from_jost(c, z, c[0].q - 40.0);
        CHECK(std::abs(j - a) <= 1e-8 * std::abs(a));
      }
    }
  }
}

TEST_CASE("residues of M are the norming constants") {
  const PeakonConfig c{{1.0, -1.0}, {0.5, 0.0}, {2.0, 1.5}};
  const auto cf = WeylRepresentation::continued_fraction(string_coefficients(SpectralProblem::from(c)));
  const SpectralData d = spectral_data(c);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double eps = 1e-10;
    const cplx z(d.eigenvalues[i], eps);
    // -Res M = lim (lambda - z) M(z)
    const cplx res = (d.eigenvalues[i] - z) * weyl_eval(cf, z);
    CHECK(std::abs(res - d.gammas[i]) <= 1e-6 * d.gammas[i]);
  }
}

TEST_CASE("Laurent expansion of M reproduces the moments") {
  const PeakonConfig c{{1.0, -0.5}, {0.7, 0.8}, {0.3, 2.0}};
  const SpectralData d = spectral_data(c);
  const auto cf = WeylRepresentation::continued_fraction(string_coefficients(c));
  const MomentSequence s = moments(d.eigenvalues, d.gammas, 6);
  for (double arg : {0.3, 1.1, 2.5}) {
    const cplx z = std::polar(1e3, arg);
    // M = 1/z - sum_k s_k / z^{k+1}; s_0 carries the extra unit atom at 0
    cplx series = 1.0 / z;
    for (std::size_t k = 0; k <= 6; ++k) series -= s.s[k] / std::pow(z, double(k + 1));
    CHECK(std::abs(weyl_eval(cf, z) - series) <= 1e-8 * std::abs(series));
  }
}

TEST_CASE("malformed spectral problems and non-eigenvalues are rejected") {
  CHECK(SpectralProblem(std::vector<SpectralAtom>{}).size() == 0);
  CHECK_THROWS_AS(SpectralProblem({{Real(0), Real(0), Real(0)}}), InvalidInput);
  CHECK_THROWS_AS(SpectralProblem({{Real(1), Real(1), Real(0)}, {Real(0), Real(1), Real(0)}}),
                  InvalidInput);
  CHECK_THROWS_AS(SpectralProblem({{Real(0), Real(1), Real(-1)}}), InvalidInput);
  const PeakonConfig one{{1.0, 0.0}};
  const std::vector<double> wrong{0.4};
  CHECK_THROWS_AS(norming_constants(one, wrong), InvalidInput);
  CHECK_THROWS_AS(coupling_constants(one, wrong), InvalidInput);
}
