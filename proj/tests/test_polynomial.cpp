#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "peakon/polynomial.hpp"
#include "support.hpp"

using namespace peakon;

namespace {

Polynomial from_roots(const std::vector<Real>& roots, const Real& lead = 1) {
  Polynomial p = Polynomial::constant(lead);
  for (const Real& r : roots) p = p * Polynomial({-r, Real(1)});
  return p;
}

}  // namespace

TEST_CASE("arithmetic, trimming and evaluation") {
  const Polynomial a{1, 2, 3};
  const Polynomial b{0, 0, -3};
  CHECK((a + b).degree() == 1);
  CHECK(Polynomial{0, 0}.is_zero());
  CHECK(Polynomial().degree() == -1);
  CHECK((a * b).degree() == 4);
  CHECK(a(Real(2)) == 17);
  CHECK(a(2.0) == 17.0);
  CHECK(a.derivative()(Real(1)) == 8);
  Real v, d;
  a.eval_with_derivative(Real(-1), v, d);
  CHECK(v == 2);
  CHECK(d == -4);
  CHECK(a.magnitude(Real(-1)) == 6);
  CHECK((-a)[2] == -3);
  CHECK(Polynomial::monomial(Real(5), 3)[3] == 5);
  CHECK(a[7] == 0);
}

TEST_CASE("remainder of Euclidean division") {
  // (z^3 - 1) = (z - 1)(z^2 + z + 1)
  const Polynomial p{-1, 0, 0, 1};
  CHECK(p.remainder(Polynomial{-1, 1}).is_zero());
  const Polynomial r = p.remainder(Polynomial{1, 0, 1});
  // z^3 - 1 = z (z^2 + 1) - z - 1
  CHECK(r.degree() == 1);
  CHECK(r[0] == -1);
  CHECK(r[1] == -1);
}

TEST_CASE("Sturm sequence counts and isolates distinct roots") {
  const Polynomial p = from_roots({Real(-2), Real("0.5"), Real(3)});
  const SturmSequence s(p);
  CHECK(s.count(Real(-10), Real(10)) == 3);
  CHECK(s.count(Real(0), Real(1)) == 1);
  CHECK(s.count(Real(3), Real(4)) == 0);  // (a, b] excludes a
  const auto roots = s.roots(Real("1e-40"));
  REQUIRE(roots.size() == 3);
  CHECK(abs(roots[1] - Real("0.5")) < Real("1e-38"));
}

TEST_CASE("real_simple_roots recovers random real spectra to extended precision") {
  testing::Rng rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testing::uniform_index(rng, 1, 10);
    std::vector<Real> want;
    for (std::size_t i = 0; i < n; ++i) want.push_back(Real(testing::uniform(rng, -4.0, 4.0)));
    std::sort(want.begin(), want.end());
    bool separated = true;
    for (std::size_t i = 1; i < n; ++i) separated = separated && (want[i] - want[i - 1] > 1e-3);
    if (!separated) continue;
    const Real lead(testing::uniform(rng, 0.5, 20.0) * ((rng() & 1u) ? 1.0 : -1.0));
    const auto got = real_simple_roots(from_roots(want, lead));
    REQUIRE(got.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(abs(got[i] - want[i]) <= Real("1e-40") * (1 + abs(want[i])));
  }
}

TEST_CASE("clustered roots fall back to Sturm bisection and still certify") {
  std::vector<Real> want{Real(1), Real(1) + Real("1e-9"), Real(1) + Real("2e-9"), Real(2)};
  const auto got = real_simple_roots(from_roots(want));
  REQUIRE(got.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(abs(got[i] - want[i]) < Real("1e-25"));
}

TEST_CASE("non-real or repeated roots are reported as numerical failures") {
  CHECK_THROWS_AS(real_simple_roots(Polynomial{1, 0, 1}), NumericalFailure);
  CHECK_THROWS_AS(real_simple_roots(from_roots({Real(1), Real(1)})), NumericalFailure);
  CHECK(real_simple_roots(Polynomial{3}).empty());
}
