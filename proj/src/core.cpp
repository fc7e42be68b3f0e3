#include "peakon/core.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "peakon/kernels.hpp"

namespace peakon {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t n = 0; n < atoms_.size(); ++n) {
    if (!std::isfinite(atoms_[n].x) || !std::isfinite(atoms_[n].w))
      throw InvalidInput("peakon-core", "non-finite atom #" + std::to_string(n));
    if (atoms_[n].w == 0.0)
      throw InvalidInput("peakon-core", "zero weight at atom #" + std::to_string(n));
    if (n > 0 && !(atoms_[n - 1].x < atoms_[n].x))
      throw InvalidInput("peakon-core",
                         "atom positions not strictly increasing at #" + std::to_string(n));
  }
}

double DiscreteMeasure::total_mass() const {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.w;
  return total;
}

bool DiscreteMeasure::nonnegative() const {
  for (const Atom& a : atoms_)
    if (a.w < 0.0) return false;
  return true;
}

KernelParams KernelParams::hyperbolic(double a, double b_plus, double b_minus, double nu) {
  KernelParams k;
  k.branch = KernelBranch::hyperbolic;
  k.a = a;
  k.b_plus = b_plus;
  k.b_minus = b_minus;
  k.nu = nu;
  k.validate();
  return k;
}

KernelParams KernelParams::trigonometric(double a, double b_plus, double b_minus, double nu) {
  KernelParams k = hyperbolic(a, b_plus, b_minus, nu);
  k.branch = KernelBranch::trigonometric;
  return k;
}

KernelParams KernelParams::polynomial(double a, double b, double c) {
  KernelParams k;
  k.branch = KernelBranch::polynomial;
  k.a = a;
  k.b_plus = 0.0;
  k.b_minus = 0.0;
  k.nu = 0.0;
  k.b = b;
  k.c = c;
  k.validate();
  return k;
}

bool KernelParams::is_peakon() const noexcept {
  return branch == KernelBranch::hyperbolic && a == 0.0 && b_plus == 1.0 && b_minus == -1.0 &&
         nu == 1.0;
}

void KernelParams::validate() const {
  for (double v : {a, b_plus, b_minus, nu, b, c})
    if (!std::isfinite(v)) throw InvalidInput("peakon-core", "non-finite kernel parameter");
}

double KernelParams::G(double x) const {
  const double ax = std::fabs(x);
  switch (branch) {
    case KernelBranch::hyperbolic: {
      // cosh/sinh rewritten in exponentials so that b_plus = -b_minus cancels exactly
      const double grow = 0.5 * (b_plus + b_minus);
      const double decay = 0.5 * (b_plus - b_minus);
      double g = a;
      if (grow != 0.0) g += grow * std::exp(nu * ax);
      if (decay != 0.0) g += decay * std::exp(-nu * ax);
      return g;
    }
    case KernelBranch::trigonometric:
      return a + b_plus * std::cos(nu * x) + b_minus * std::sin(nu * ax);
    case KernelBranch::polynomial:
      return a + b * ax + c * x * x;
  }
  return 0.0;
}

double KernelParams::dG(double x) const {
  if (x == 0.0) return 0.0;
  const double ax = std::fabs(x);
  const double sgn = x > 0.0 ? 1.0 : -1.0;
  switch (branch) {
    case KernelBranch::hyperbolic: {
      const double grow = 0.5 * (b_plus + b_minus);
      const double decay = 0.5 * (b_plus - b_minus);
      double d = 0.0;
      if (grow != 0.0) d += grow * std::exp(nu * ax);
      if (decay != 0.0) d -= decay * std::exp(-nu * ax);
      return sgn * nu * d;
    }
    case KernelBranch::trigonometric:
      return -b_plus * nu * std::sin(nu * x) + sgn * b_minus * nu * std::cos(nu * ax);
    case KernelBranch::polynomial:
      return sgn * b + 2.0 * c * x;
  }
  return 0.0;
}

std::string to_string(KernelBranch branch) {
  switch (branch) {
    case KernelBranch::hyperbolic:
      return "hyperbolic";
    case KernelBranch::trigonometric:
      return "trigonometric";
    case KernelBranch::polynomial:
      return "polynomial";
  }
  return "unknown";
}

KernelBranch kernel_branch_from_string(const std::string& name) {
  if (name == "hyperbolic") return KernelBranch::hyperbolic;
  if (name == "trigonometric") return KernelBranch::trigonometric;
  if (name == "polynomial") return KernelBranch::polynomial;
  throw InvalidInput("peakon-core", "unknown kernel branch '" + name + "'");
}

namespace {

template <class T>
T hamiltonian_impl(const BasicPeakonConfig<T>& config) {
  using std::exp;
  T diag = 0;
  T cross = 0;
  for (std::size_t n = 0; n < config.size(); ++n) {
    diag += config[n].p * config[n].p;
    for (std::size_t k = n + 1; k < config.size(); ++k)
      cross += config[n].p * config[k].p * exp(config[n].q - config[k].q);
  }
  return diag / 2 + cross;
}

}  // namespace

double hamiltonian(const PeakonConfig& config) { return hamiltonian_impl(config); }
Real hamiltonian(const PeakonConfigX& config) { return hamiltonian_impl(config); }

double h1_norm_squared(const PeakonConfig& config) { return 4.0 * hamiltonian(config); }

double h1_norm_squared_quadrature(const PeakonConfig& config, double half_width) {
  if (config.empty()) return 0.0;
  if (!(half_width > 0.0)) throw InvalidInput("peakon-core", "half width must be positive");

  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();

  std::vector<double> breaks;
  breaks.push_back(config[0].q - half_width);
  for (const auto& pk : config) breaks.push_back(pk.q);
  breaks.push_back(config[config.size() - 1].q + half_width);

  constexpr double kMaxPiece = 0.5;
  std::vector<double> nodes;
  std::vector<double> node_weights;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double len = breaks[s + 1] - breaks[s];
    const auto pieces = static_cast<std::size_t>(std::ceil(len / kMaxPiece));
    const double h = len / static_cast<double>(pieces);
    for (std::size_t j = 0; j < pieces; ++j) {
      const double mid = breaks[s] + (static_cast<double>(j) + 0.5) * h;
      const double half = 0.5 * h;
      for (std::size_t i = 0; i < abscissa.size(); ++i) {
        nodes.push_back(mid + half * abscissa[i]);
        node_weights.push_back(half * weights[i]);
        if (abscissa[i] != 0.0) {
          nodes.push_back(mid - half * abscissa[i]);
          node_weights.push_back(half * weights[i]);
        }
      }
    }
  }

  const auto p = config.masses();
  const auto q = config.positions();
  std::vector<double> u(nodes.size());
  std::vector<double> ux(nodes.size());
  kernels::profile_slope(nodes, p, q, u, ux);
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    total += node_weights[i] * (u[i] * u[i] + ux[i] * ux[i]);
  return total;
}

ConservativeState::ConservativeState(PeakonConfig peaks, DiscreteMeasure singular_energy)
    : peaks_(std::move(peaks)), singular_(std::move(singular_energy)) {
  if (!singular_.nonnegative())
    throw InvalidInput("peakon-core", "singular energy weights must be nonnegative");
  total_energy_ = h1_norm_squared(peaks_) + singular_.total_mass();
}

std::vector<double> eval_profile(const PeakonConfig& config, std::span<const double> xs) {
  std::vector<double> u(xs.size());
  const auto p = config.masses();
  const auto q = config.positions();
  kernels::profile(xs, p, q, u);
  return u;
}

DiscreteMeasure momentum_measure(const PeakonConfig& config) {
  std::vector<Atom> atoms;
  atoms.reserve(config.size());
  for (const auto& pk : config) atoms.push_back({pk.q, 2.0 * pk.p});
  return DiscreteMeasure(std::move(atoms));
}

double cf_hamiltonian(const KernelParams& params, const PeakonConfig& config) {
  params.validate();
  double total = 0.0;
  for (const auto& a : config)
    for (const auto& b : config) total += a.p * b.p * params.G(a.q - b.q);
  return 0.5 * total;
}

DiscreteMeasure liouville_string(const DiscreteMeasure& measure) {
  std::vector<Atom> atoms;
  atoms.reserve(measure.size());
  for (const Atom& a : measure) {
    const double ch = std::cosh(0.5 * a.x);
    atoms.push_back({0.5 * std::tanh(0.5 * a.x), 4.0 * ch * ch * a.w});
  }
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure liouville_string_inverse(const DiscreteMeasure& string_measure) {
  std::vector<Atom> atoms;
  atoms.reserve(string_measure.size());
  for (const Atom& a : string_measure) {
    if (!(std::fabs(a.x) < 0.5))
      throw InvalidInput("peakon-core", "string coordinate outside (-1/2, 1/2)");
    const double x = 2.0 * std::atanh(2.0 * a.x);
    const double ch = std::cosh(0.5 * x);
    atoms.push_back({x, a.w / (4.0 * ch * ch)});
  }
  return DiscreteMeasure(std::move(atoms));
}

}  // namespace peakon
