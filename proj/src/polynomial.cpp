#include "peakon/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "peakon/error.hpp"

namespace peakon {

namespace {
constexpr const char* kModule = "spectral-forward";
}

Polynomial::Polynomial(std::vector<Real> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Real& c, std::size_t degree) {
  std::vector<Real> v(degree + 1, Real(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Real Polynomial::operator()(const Real& z) const {
  Real acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

double Polynomial::operator()(double z) const { return to_double((*this)(Real(z))); }

void Polynomial::eval_with_derivative(const Real& z, Real& value, Real& slope) const {
  value = 0;
  slope = 0;
  for (std::size_t k = c_.size(); k-- > 0;) {
    slope = slope * z + value;
    value = value * z + c_[k];
  }
}

Real Polynomial::magnitude(const Real& z) const {
  using boost::multiprecision::abs;
  const Real az = abs(z);
  Real acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * az + abs(c_[k]);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Real> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<int>(k);
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Real> out(std::max(a.c_.size(), b.c_.size()), Real(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
  std::vector<Real> out(c_);
  for (Real& v : out) v = -v;
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Real> out(a.c_.size() + b.c_.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Real& s, const Polynomial& a) {
  std::vector<Real> out(a.c_);
  for (Real& v : out) v *= s;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw InvalidInput(kModule, "division by the zero polynomial");
  std::vector<Real> r(c_);
  const std::size_t dn = divisor.c_.size();
  const Real lead = divisor.c_.back();
  while (r.size() >= dn) {
    const Real f = r.back() / lead;
    const std::size_t shift = r.size() - dn;
    for (std::size_t k = 0; k < dn; ++k) r[shift + k] -= f * divisor.c_[k];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return Polynomial(std::move(r));
}

SturmSequence::SturmSequence(const Polynomial& p) {
  using boost::multiprecision::abs;
  if (p.degree() < 1) throw InvalidInput(kModule, "Sturm sequence needs degree >= 1");
  chain_.push_back(p);
  chain_.push_back(p.derivative());
  while (chain_.back().degree() > 0) {
    Polynomial r = chain_[chain_.size() - 2].remainder(chain_.back());
    // drop numerically negligible remainders (coefficients relative to the dividend)
    Real scale = 0;
    for (const Real& c : chain_[chain_.size() - 2].coefficients()) scale = std::max(scale, abs(c));
    Real rmax = 0;
    for (const Real& c : r.coefficients()) rmax = std::max(rmax, abs(c));
    if (r.is_zero() || rmax <= scale * Real("1e-50")) break;
    chain_.push_back(-r);
  }
  // Cauchy bound on root magnitudes
  const auto& c = p.coefficients();
  Real m = 0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, abs(c[k] / c.back()));
  bound_ = 1 + m;
}

int SturmSequence::sign_changes(const Real& x) const {
  int changes = 0;
  int prev = 0;
  for (const Polynomial& q : chain_) {
    const Real v = q(x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int SturmSequence::count(const Real& a, const Real& b) const { return sign_changes(a) - sign_changes(b); }

std::vector<Real> SturmSequence::roots(const Real& rel) const {
  using boost::multiprecision::abs;
  struct Bracket {
    Real lo, hi;
    int n;
  };
  std::vector<Real> out;
  std::vector<Bracket> work{{-bound_, bound_, count(-bound_, bound_)}};
  while (!work.empty()) {
    Bracket b = work.back();
    work.pop_back();
    if (b.n == 0) continue;
    const Real mid = (b.lo + b.hi) / 2;
    const Real width = b.hi - b.lo;
    const bool narrow = width <= rel * std::max(abs(b.lo), abs(b.hi)) || width < Real("1e-300");
    if (b.n == 1 && narrow) {
      out.push_back(mid);
      continue;
    }
    if (narrow) throw NumericalFailure(kModule, "clustered roots could not be separated");
    const int left = count(b.lo, mid);
    work.push_back({b.lo, mid, left});
    work.push_back({mid, b.hi, b.n - left});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool polish(const Polynomial& p, const std::vector<Real>& found, Real& x) {
  using boost::multiprecision::abs;
  const Real tol = Real("1e-55");
  for (int it = 0; it < 200; ++it) {
    Real v, d;
    p.eval_with_derivative(x, v, d);
    if (v == 0) return true;
    // Maehly deflation keeps the iterate away from roots already accepted
    Real defl = 0;
    for (const Real& r : found) defl += 1 / (x - r);
    const Real denom = d - v * defl;
    if (denom == 0) return false;
    const Real step = v / denom;
    x -= step;
    if (abs(step) <= tol * abs(x)) return true;
  }
  return false;
}

bool certified(const Polynomial& p, const std::vector<Real>& roots) {
  using boost::multiprecision::abs;
  if (static_cast<int>(roots.size()) != p.degree()) return false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (abs(p(roots[i])) > Real("1e-12") * p.magnitude(roots[i])) return false;
    if (i > 0 && !(roots[i] - roots[i - 1] > Real("1e-12") * abs(roots[i]))) return false;
  }
  return true;
}

}  // namespace

std::vector<Real> real_simple_roots(const Polynomial& p) {
  using boost::multiprecision::abs;
  const int n = p.degree();
  if (n < 1) return {};

  std::vector<Real> roots;
  bool ok = true;
  {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = to_double(p[static_cast<std::size_t>(n)]);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
      companion(i, n - 1) = -to_double(p[static_cast<std::size_t>(i)]) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) ok = false;
    if (ok) {
      std::vector<std::complex<double>> est(solver.eigenvalues().data(),
                                            solver.eigenvalues().data() + n);
      std::sort(est.begin(), est.end(),
                [](auto a, auto b) { return a.real() < b.real(); });
      for (const auto& e : est) {
        if (!(std::fabs(e.imag()) <= 1e-6 * std::max(1.0, std::abs(e)))) {
          ok = false;
          break;
        }
        Real x = e.real();
        if (!polish(p, roots, x)) {
          ok = false;
          break;
        }
        roots.push_back(x);
      }
      std::sort(roots.begin(), roots.end());
      ok = ok && certified(p, roots);
    }
  }
  if (ok) return roots;

  roots = SturmSequence(p).roots(Real("1e-30"));
  std::vector<Real> refined;
  for (Real x : roots) {
    std::vector<Real> none;
    polish(p, none, x);
    refined.push_back(x);
  }
  std::sort(refined.begin(), refined.end());
  if (!certified(p, refined))
    throw NumericalFailure(kModule, "polynomial roots are not real and simple within tolerance");
  return refined;
}

}  // namespace peakon
