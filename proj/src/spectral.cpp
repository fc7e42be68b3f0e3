#include "peakon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "peakon/error.hpp"

namespace peakon {

namespace {

constexpr const char* kModule = "spectral-forward";

using boost::multiprecision::abs;
using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::sinh;

struct Cx {
  Real re = 0;
  Real im = 0;

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  Cx inverse() const {
    const Real d = re * re + im * im;
    return {re / d, -im / d};
  }
  std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }
};

Cx eval(const Polynomial& p, const Cx& z) {
  Cx acc;
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + Cx{c[k], 0};
  return acc;
}

void require_eigenvalue(const Polynomial& w, const Real& lambda) {
  if (!(abs(w(lambda)) <= Real("1e-12") * w.magnitude(lambda)))
    throw InvalidInput(kModule, "value is not an eigenvalue (Wronskian residual too large)");
}

}  // namespace

SpectralProblem::SpectralProblem(std::vector<SpectralAtom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t n = 0; n < atoms_.size(); ++n) {
    if (n > 0 && !(atoms_[n - 1].x < atoms_[n].x))
      throw InvalidInput(kModule, "atom positions not strictly increasing");
    if (atoms_[n].upsilon < 0) throw InvalidInput(kModule, "negative singular energy weight");
    if (atoms_[n].omega == 0 && atoms_[n].upsilon == 0)
      throw InvalidInput(kModule, "empty atom");
  }
}

SpectralProblem SpectralProblem::from(const PeakonConfig& config) {
  std::vector<SpectralAtom> atoms;
  for (const auto& pk : config) atoms.push_back({Real(pk.q), 2 * Real(pk.p), Real(0)});
  return SpectralProblem(std::move(atoms));
}

SpectralProblem SpectralProblem::from(const PeakonConfigX& config) {
  std::vector<SpectralAtom> atoms;
  for (const auto& pk : config) atoms.push_back({pk.q, 2 * pk.p, Real(0)});
  return SpectralProblem(std::move(atoms));
}

SpectralProblem SpectralProblem::from(const ConservativeState& state) {
  std::map<double, SpectralAtom> merged;
  for (const auto& pk : state.peaks()) merged[pk.q] = {Real(pk.q), 2 * Real(pk.p), Real(0)};
  for (const Atom& a : state.singular_energy()) {
    auto [it, inserted] = merged.try_emplace(a.x, SpectralAtom{Real(a.x), Real(0), Real(0)});
    it->second.upsilon += a.w;
  }
  std::vector<SpectralAtom> atoms;
  for (auto& [x, atom] : merged) atoms.push_back(atom);
  return SpectralProblem(std::move(atoms));
}

std::size_t JostSolution::interval(const Real& x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                                  breakpoints.begin());
}

Real JostSolution::operator()(const Real& z, const Real& x) const {
  const std::size_t j = interval(x);
  return A[j](z) * exp(x / 2) + B[j](z) * exp(-x / 2);
}

double JostSolution::operator()(double z, double x) const {
  return to_double((*this)(Real(z), Real(x)));
}

Real JostSolution::slope(const Real& z, const Real& x) const {
  const std::size_t j = interval(x);
  return (A[j](z) * exp(x / 2) - B[j](z) * exp(-x / 2)) / 2;
}

JostSolution jost_solution(const SpectralProblem& problem, JostDirection direction) {
  const auto& atoms = problem.atoms();
  const std::size_t k = atoms.size();
  JostSolution js;
  js.direction = direction;
  js.A.resize(k + 1);
  js.B.resize(k + 1);
  for (const auto& a : atoms) js.breakpoints.push_back(a.x);

  auto jump = [](const SpectralAtom& a) { return Polynomial({Real(0), a.omega, a.upsilon}); };
  if (direction == JostDirection::minus) {
    js.A[0] = Polynomial::constant(1);
    js.B[0] = Polynomial();
    for (std::size_t n = 0; n < k; ++n) {
      const Polynomial kappa = jump(atoms[n]);
      const Real ex = exp(atoms[n].x);
      const Real emx = exp(-atoms[n].x);
      const Polynomial& A = js.A[n];
      const Polynomial& B = js.B[n];
      js.A[n + 1] = A - kappa * (A + emx * B);
      js.B[n + 1] = B + kappa * (ex * A + B);
    }
  } else {
    js.A[k] = Polynomial();
    js.B[k] = Polynomial::constant(1);
    for (std::size_t n = k; n-- > 0;) {
      const Polynomial kappa = jump(atoms[n]);
      const Real ex = exp(atoms[n].x);
      const Real emx = exp(-atoms[n].x);
      const Polynomial& A = js.A[n + 1];
      const Polynomial& B = js.B[n + 1];
      js.A[n] = A + kappa * (A + emx * B);
      js.B[n] = B - kappa * (ex * A + B);
    }
  }
  return js;
}

JostSolution jost_solution(const PeakonConfig& config, JostDirection direction) {
  return jost_solution(SpectralProblem::from(config), direction);
}

Polynomial wronskian_polynomial(const SpectralProblem& problem) {
  return jost_solution(problem, JostDirection::minus).A.back();
}

Polynomial wronskian_polynomial(const PeakonConfig& config) {
  return wronskian_polynomial(SpectralProblem::from(config));
}

std::vector<Real> eigenvalues(const SpectralProblem& problem) {
  if (problem.size() == 0) return {};
  return real_simple_roots(wronskian_polynomial(problem));
}

std::vector<double> eigenvalues(const PeakonConfig& config) {
  const auto ev = eigenvalues(SpectralProblem::from(config));
  return to_double(ev);
}

std::vector<Real> norming_constants(const SpectralProblem& problem, std::span<const Real> sigma) {
  const JostSolution js = jost_solution(problem, JostDirection::minus);
  const Polynomial& w = js.A.back();
  const auto& atoms = problem.atoms();
  const std::size_t k = atoms.size();
  std::vector<Real> out;
  out.reserve(sigma.size());
  for (const Real& lambda : sigma) {
    require_eigenvalue(w, lambda);
    if (k == 0) throw InvalidInput(kModule, "empty problem has no eigenvalues");
    // piecewise closed form of int (y')^2 + y^2/4 = (A^2 e^x - B^2 e^{-x})/2 |_a^b;
    // the A_K term is dropped since it vanishes at an eigenvalue
    Real energy = exp(atoms.front().x) / 2;
    for (std::size_t j = 1; j < k; ++j) {
      const Real a = atoms[j - 1].x;
      const Real b = atoms[j].x;
      const Real Aj = js.A[j](lambda);
      const Real Bj = js.B[j](lambda);
      energy += (Aj * Aj * (exp(b) - exp(a)) + Bj * Bj * (exp(-a) - exp(-b))) / 2;
    }
    const Real BK = js.B[k](lambda);
    energy += BK * BK * exp(-atoms.back().x) / 2;
    for (std::size_t j = 0; j < k; ++j) {
      if (atoms[j].upsilon == 0) continue;
      const Real y = js(lambda, atoms[j].x);
      energy += lambda * lambda * atoms[j].upsilon * y * y;
    }
    if (!(energy > 0)) throw NumericalFailure(kModule, "nonpositive norming integral");
    out.push_back(1 / energy);
  }
  return out;
}

std::vector<double> norming_constants(const PeakonConfig& config, std::span<const double> sigma) {
  const auto sx = to_real(sigma);
  const auto g = norming_constants(SpectralProblem::from(config), sx);
  return to_double(g);
}

std::vector<Real> coupling_constants(const SpectralProblem& problem, std::span<const Real> sigma) {
  const JostSolution minus = jost_solution(problem, JostDirection::minus);
  const JostSolution plus = jost_solution(problem, JostDirection::plus);
  const Polynomial& w = minus.A.back();
  const std::size_t k = problem.size();
  std::vector<Real> out;
  out.reserve(sigma.size());
  for (const Real& lambda : sigma) {
    require_eigenvalue(w, lambda);
    const Real bk = minus.B[k](lambda);
    if (bk == 0) throw NumericalFailure(kModule, "phi_- vanishes identically at +inf");
    const Real c = 1 / bk;
    // phi_+ = c phi_- must hold on each interval, checked at its left end
    for (std::size_t j = 0; j <= k; ++j) {
      const Real x = j == 0 ? (k ? problem.atoms()[0].x - 1 : Real(0)) : problem.atoms()[j - 1].x;
      const Real fp = plus(lambda, x);
      const Real fm = c * minus(lambda, x);
      const Real dp = plus.slope(lambda, x);
      const Real dm = c * minus.slope(lambda, x);
      const Real scale = abs(fp) + abs(fm) + abs(dp) + abs(dm);
      if (abs(fp - fm) + abs(dp - dm) > Real("1e-10") * scale)
        throw InvalidInput(kModule, "phi_+/phi_- varies across intervals (not an eigenvalue)");
    }
    out.push_back(c);
  }
  return out;
}

std::vector<double> coupling_constants(const PeakonConfig& config, std::span<const double> sigma) {
  const auto sx = to_real(sigma);
  const auto c = coupling_constants(SpectralProblem::from(config), sx);
  return to_double(c);
}

StringCoefficientsX string_coefficients(const SpectralProblem& problem) {
  const auto& atoms = problem.atoms();
  const std::size_t k = atoms.size();
  StringCoefficientsX s;
  s.m.reserve(k);
  s.v.reserve(k);
  s.l.reserve(k + 1);
  for (const auto& a : atoms) {
    const Real ch = cosh(a.x / 2);
    s.m.push_back(4 * a.omega * ch * ch);
    s.v.push_back(4 * a.upsilon * ch * ch);
  }
  if (k == 0) {
    s.l.push_back(1);
    return s;
  }
  // tanh differences rewritten without cancellation
  s.l.push_back(1 / (1 + exp(-atoms.front().x)));
  for (std::size_t n = 1; n < k; ++n) {
    const Real a = atoms[n - 1].x;
    const Real b = atoms[n].x;
    s.l.push_back(sinh((b - a) / 2) / (2 * cosh(b / 2) * cosh(a / 2)));
  }
  s.l.push_back(1 / (1 + exp(atoms.back().x)));
  return s;
}

StringCoefficients string_coefficients(const PeakonConfig& config) {
  const auto sx = string_coefficients(SpectralProblem::from(config));
  return {to_double(sx.m), to_double(sx.l), to_double(sx.v)};
}

SpectralDataX spectral_data(const SpectralProblem& problem) {
  SpectralDataX d;
  d.eigenvalues = eigenvalues(problem);
  d.gammas = norming_constants(problem, d.eigenvalues);
  d.couplings = coupling_constants(problem, d.eigenvalues);
  return d;
}

SpectralData spectral_data(const PeakonConfig& config) {
  return to_double(spectral_data(SpectralProblem::from(config)));
}

SpectralData to_double(const SpectralDataX& data) {
  return {to_double(data.eigenvalues), to_double(data.gammas), to_double(data.couplings)};
}

SpectralDataX to_real(const SpectralData& data) {
  return {to_real(data.eigenvalues), to_real(data.gammas), to_real(data.couplings)};
}

WeylRepresentation WeylRepresentation::partial_fractions(std::vector<Real> poles,
                                                         std::vector<Real> gammas) {
  if (poles.size() != gammas.size()) throw InvalidInput(kModule, "pole/residue count mismatch");
  WeylRepresentation r;
  r.form = Form::partial_fraction;
  r.poles = std::move(poles);
  r.residues = std::move(gammas);
  return r;
}

WeylRepresentation WeylRepresentation::partial_fractions(const SpectralData& data) {
  return partial_fractions(to_real(data.eigenvalues), to_real(data.gammas));
}

WeylRepresentation WeylRepresentation::partial_fractions(const SpectralDataX& data) {
  return partial_fractions(data.eigenvalues, data.gammas);
}

WeylRepresentation WeylRepresentation::continued_fraction(const StringCoefficientsX& coeffs) {
  if (coeffs.l.size() != coeffs.m.size() + 1)
    throw InvalidInput(kModule, "continued fraction needs one more l than m");
  WeylRepresentation r;
  r.form = Form::continued_fraction;
  r.m = coeffs.m;
  r.l = coeffs.l;
  r.v = coeffs.v;
  r.v.resize(r.m.size(), Real(0));
  return r;
}

WeylRepresentation WeylRepresentation::continued_fraction(const StringCoefficients& coeffs) {
  return continued_fraction(StringCoefficientsX{to_real(coeffs.m), to_real(coeffs.l),
                                                to_real(coeffs.v)});
}

std::complex<double> weyl_eval(const WeylRepresentation& rep, std::complex<double> zd) {
  const Cx z{Real(zd.real()), Real(zd.imag())};
  if (rep.form == WeylRepresentation::Form::partial_fraction) {
    Cx sum;
    for (std::size_t i = 0; i < rep.poles.size(); ++i) {
      const Cx d = Cx{rep.poles[i], 0} - z;
      if (d.is_zero()) throw InvalidInput(kModule, "Weyl function evaluated at a pole");
      sum = sum + rep.residues[i] * d.inverse();
    }
    return sum.to_std();
  }
  if (z.is_zero()) throw NumericalFailure(kModule, "continued fraction is singular at z = 0");
  const std::size_t k = rep.m.size();
  const Cx z2 = z * z;
  Cx f{-rep.l[k], 0};
  for (std::size_t n = k; n >= 1; --n) {
    if (f.is_zero()) throw NumericalFailure(kModule, "vanishing continued-fraction denominator");
    f = rep.m[n - 1] * z + rep.v[n - 1] * z2 + f.inverse();
    if (f.is_zero()) throw NumericalFailure(kModule, "vanishing continued-fraction denominator");
    f = Cx{-rep.l[n - 1], 0} + f.inverse();
  }
  if (f.is_zero()) throw NumericalFailure(kModule, "vanishing continued-fraction denominator");
  const Cx zm = Cx{1, 0} + f.inverse();
  return (zm * z.inverse()).to_std();
}

std::complex<double> weyl_from_jost(const PeakonConfig& config, std::complex<double> zd,
                                    double xd) {
  if (!config.empty() && !(xd < config[0].q))
    throw InvalidInput(kModule, "evaluation point must lie left of every peak");
  const JostSolution plus = jost_solution(config, JostDirection::plus);
  const Cx z{Real(zd.real()), Real(zd.imag())};
  if (z.is_zero()) throw InvalidInput(kModule, "z = 0");
  const Real x(xd);
  const Real eh = exp(x / 2);
  const Real emh = exp(-x / 2);
  const Cx a = eval(plus.A[0], z);
  const Cx b = eval(plus.B[0], z);
  const Cx phi = eh * a + emh * b;
  const Cx dphi = Real(0.5) * (eh * a - emh * b);
  const Cx num = dphi + Real(0.5) * phi;
  const Cx den = exp(x) * (z * (dphi - Real(0.5) * phi));
  if (den.is_zero()) throw NumericalFailure(kModule, "vanishing Jost denominator");
  return (Real(-1) * (num * den.inverse())).to_std();
}

}  // namespace peakon
