#include <cmath>

#include "doctest.h"
#include "oracle_values.hpp"
#include "peakon/dynamics.hpp"
#include "support.hpp"

using namespace peakon;

namespace {

PeakonConfig final_state(const PeakonConfig& c, double t, const KernelParams& k = {}) {
  IntegrateOptions o;
  o.output_times = {t};
  const Trajectory tr = integrate(k, c, t, o);
  REQUIRE(tr.events.empty());
  REQUIRE(tr.times.back() == doctest::Approx(t));
  return tr.states.back();
}

}  // namespace

TEST_CASE("single peakon travels at its own height") {
  const PeakonConfig s = final_state({{2.0, 0.5}}, 3.0);
  CHECK(s[0].q == doctest::Approx(6.5).epsilon(1e-12));
  CHECK(s[0].p == 2.0);
}

TEST_CASE("peakon right-hand side") {
  const PeakonConfig c{{1.0, 0.0}, {2.0, 1.0}};
  const PhaseVelocity v = rhs(KernelParams::peakon(), c);
  const double e = std::exp(-1.0);
  CHECK(v.dq[0] == doctest::Approx(1.0 + 2.0 * e));
  CHECK(v.dq[1] == doctest::Approx(2.0 + e));
  CHECK(v.dp[0] == doctest::Approx(-2.0 * e));
  CHECK(v.dp[1] == doctest::Approx(2.0 * e));
  const std::vector<double> p{1.0, 1.0}, q{0.0, 0.0};
  CHECK_THROWS_AS(rhs(KernelParams::peakon(), p, q), InvalidInput);
}

TEST_CASE("right-hand side is the canonical gradient of the Calogero-Francoise Hamiltonian") {
  const KernelParams kernels[] = {KernelParams::peakon(),
                                  KernelParams::hyperbolic(0.3, 0.5, 0.2, 0.7),
                                  KernelParams::trigonometric(0.1, 1.0, 0.4, 1.2),
                                  KernelParams::polynomial(0.5, -0.3, 0.05)};
  testing::Rng rng(8080);
  testing::ConfigShape shape;
  shape.n_max = 5;
  shape.mixed_signs = true;
  for (const auto& k : kernels)
    for (int trial = 0; trial < 10; ++trial) {
      const PeakonConfig c = testing::random_config(rng, shape);
      const PhaseVelocity v = rhs(k, c);
      const double h = 1e-6;
      for (std::size_t n = 0; n < c.size(); ++n) {
        auto shifted = [&](double dp, double dq) {
          auto peaks = c.peaks();
          peaks[n].p += dp;
          peaks[n].q += dq;
          return cf_hamiltonian(k, PeakonConfig(peaks));
        };
        const double dH_dp = (shifted(h, 0) - shifted(-h, 0)) / (2 * h);
        const double dH_dq = (shifted(0, h) - shifted(0, -h)) / (2 * h);
        CHECK(v.dq[n] == doctest::Approx(dH_dp).epsilon(1e-6));
        CHECK(v.dp[n] == doctest::Approx(-dH_dq).epsilon(1e-6));
      }
    }
}

TEST_CASE("two positive peakons against the high-precision Taylor integration") {
  const PeakonConfig init{{1.0, 0.0}, {2.0, 1.0}};
  const double* want = oracle::kTwoPeakonAtOne;  // p1, p2, q1, q2
  const PeakonConfig ode = final_state(init, 1.0);
  const PeakonConfig cf = two_peakon_exact(init, 1.0);
  for (const PeakonConfig* s : {&ode, &cf}) {
    CHECK((*s)[0].p == doctest::Approx(want[0]).epsilon(1e-9));
    CHECK((*s)[1].p == doctest::Approx(want[1]).epsilon(1e-9));
    CHECK((*s)[0].q == doctest::Approx(want[2]).epsilon(1e-9));
    CHECK((*s)[1].q == doctest::Approx(want[3]).epsilon(1e-9));
  }
}

TEST_CASE("blow-up instants of opposite-sign pairs") {
  const auto anti = two_peakon_blowup_time({{1.0, -1.0}, {-1.0, 1.0}});
  REQUIRE(anti);
  CHECK(*anti == doctest::Approx(oracle::kAntipeakonBlowup[0]).epsilon(1e-13));
  const auto mixed = two_peakon_blowup_time({{2.0, -1.0}, {-1.0, 1.0}});
  REQUIRE(mixed);
  CHECK(*mixed == doctest::Approx(oracle::kMixedBlowup[0]).epsilon(1e-13));
  // receding or same-sign pairs never collide
  CHECK_FALSE(two_peakon_blowup_time({{-1.0, -1.0}, {1.0, 1.0}}));
  CHECK_FALSE(two_peakon_blowup_time({{1.0, -1.0}, {2.0, 1.0}}));
  CHECK_THROWS_AS(two_peakon_exact({{1.0, -1.0}, {-1.0, 1.0}}, 2.0), InvalidInput);
}

TEST_CASE("integration stops at a collision with an extrapolated instant") {
  const PeakonConfig mixed{{2.0, -1.0}, {-1.0, 1.0}};
  const Trajectory tr = integrate(KernelParams::peakon(), mixed, 5.0);
  REQUIRE(tr.events.size() == 1);
  const CollisionEvent& ev = tr.events.front();
  CHECK(ev.indices == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(ev.gap <= 1e-8);
  CHECK(ev.detection_time <= ev.time);
  CHECK(std::fabs(ev.time - oracle::kMixedBlowup[0]) <= 1e-6);
  CHECK(tr.times.back() < 5.0);
}

TEST_CASE("reduced two-peakon variables follow the closed form") {
  testing::Rng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const double p1 = testing::uniform(rng, 0.2, 3.0), p2 = testing::uniform(rng, 0.2, 3.0);
    const double gap = testing::uniform(rng, 0.2, 3.0);
    const PeakonConfig init{{p1, 0.0}, {p2, gap}};
    const auto red = TwoPeakonReduced::from_config(init);
    CHECK(red.P0 == doctest::Approx(p1 + p2));
    CHECK(red.H0sq == doctest::Approx(hamiltonian(init)));
    for (double t : {0.5, 2.0, 6.0}) {
      const PeakonConfig ode = final_state(init, t);
      CHECK(red.P_at(t) == doctest::Approx(ode[1].p - ode[0].p).epsilon(1e-8));
      CHECK(red.Q_at(t) == doctest::Approx(ode[1].q - ode[0].q).epsilon(1e-8));
      CHECK(testing::config_error(two_peakon_exact(init, t), ode) <= 1e-8);
    }
  }
}

TEST_CASE("Hamiltonian and total momentum are conserved") {
  testing::Rng rng(123);
  testing::ConfigShape shape;
  shape.n_max = 5;
  for (int trial = 0; trial < 10; ++trial) {
    const PeakonConfig c = testing::random_config(rng, shape);
    const Trajectory tr = integrate(KernelParams::peakon(), c, 10.0);
    REQUIRE(tr.events.empty());
    CHECK(tr.hamiltonian_drift <= 1e-9);
    CHECK(tr.momentum_drift <= 1e-12);
  }
  const auto k = KernelParams::trigonometric(0.2, 1.0, 0.3, 0.8);
  const PeakonConfig c{{1.0, -1.0}, {0.5, 0.5}, {0.3, 2.0}};
  const Trajectory tr = integrate(k, c, 5.0);
  REQUIRE(tr.events.empty());
  CHECK(tr.hamiltonian_drift <= 1e-9);
  CHECK(tr.momentum_drift <= 1e-12);
}

TEST_CASE("output times and invalid arguments") {
  IntegrateOptions o;
  o.output_times = {0.0, 0.5, 1.0, 2.0};
  const Trajectory tr = integrate(KernelParams::peakon(), {{1.0, 0.0}, {0.5, 2.0}}, 2.0, o);
  REQUIRE(tr.times.size() == 4);
  CHECK(tr.times[2] == 1.0);
  CHECK(tr.states[0][1].q == 2.0);
  IntegrateOptions bad;
  bad.rtol = -1.0;
  CHECK_THROWS_AS(integrate(KernelParams::peakon(), {{1.0, 0.0}}, 1.0, bad), InvalidInput);
  CHECK_THROWS_AS(integrate(KernelParams::peakon(), {{1.0, 0.0}}, -1.0), InvalidInput);
}
