#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "peakon/error.hpp"
#include "peakon/real.hpp"

namespace peakon {

template <class T>
struct BasicPeak {
  T p;  // mass (height)
  T q;  // position
};

// Ordered peakon data defining u(x) = sum_n p_n exp(-|x - q_n|).
// Positions are strictly increasing and masses nonzero; the empty
// configuration is legal and represents u == 0.
template <class T>
class BasicPeakonConfig {
 public:
  using value_type = BasicPeak<T>;

  BasicPeakonConfig() = default;
  explicit BasicPeakonConfig(std::vector<BasicPeak<T>> peaks) : peaks_(std::move(peaks)) {
    validate();
  }
  BasicPeakonConfig(std::initializer_list<BasicPeak<T>> peaks)
      : BasicPeakonConfig(std::vector<BasicPeak<T>>(peaks)) {}

  std::size_t size() const noexcept { return peaks_.size(); }
  bool empty() const noexcept { return peaks_.empty(); }
  const BasicPeak<T>& operator[](std::size_t i) const { return peaks_[i]; }
  auto begin() const noexcept { return peaks_.begin(); }
  auto end() const noexcept { return peaks_.end(); }
  const std::vector<BasicPeak<T>>& peaks() const noexcept { return peaks_; }

  std::vector<T> masses() const {
    std::vector<T> out;
    out.reserve(peaks_.size());
    for (const auto& pk : peaks_) out.push_back(pk.p);
    return out;
  }
  std::vector<T> positions() const {
    std::vector<T> out;
    out.reserve(peaks_.size());
    for (const auto& pk : peaks_) out.push_back(pk.q);
    return out;
  }

 private:
  void validate() const {
    using std::isfinite;
    for (std::size_t n = 0; n < peaks_.size(); ++n) {
      if (!isfinite(peaks_[n].p) || !isfinite(peaks_[n].q))
        throw InvalidInput("peakon-core", "non-finite peak #" + std::to_string(n));
      if (peaks_[n].p == 0)
        throw InvalidInput("peakon-core", "zero mass at peak #" + std::to_string(n));
      if (n > 0 && !(peaks_[n - 1].q < peaks_[n].q))
        throw InvalidInput("peakon-core",
                           "positions not strictly increasing at peak #" + std::to_string(n));
    }
  }

  std::vector<BasicPeak<T>> peaks_;
};

using Peak = BasicPeak<double>;
using PeakonConfig = BasicPeakonConfig<double>;
using PeakX = BasicPeak<Real>;
using PeakonConfigX = BasicPeakonConfig<Real>;

template <class U, class T>
BasicPeakonConfig<U> config_cast(const BasicPeakonConfig<T>& config) {
  std::vector<BasicPeak<U>> out;
  out.reserve(config.size());
  for (const auto& pk : config) out.push_back({static_cast<U>(pk.p), static_cast<U>(pk.q)});
  return BasicPeakonConfig<U>(std::move(out));
}

struct Atom {
  double x;
  double w;
};

// Finite sum of point masses, positions strictly increasing, weights nonzero.
// No atoms at all is the zero measure.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  auto begin() const noexcept { return atoms_.begin(); }
  auto end() const noexcept { return atoms_.end(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  double total_mass() const;
  bool nonnegative() const;

 private:
  std::vector<Atom> atoms_;
};

enum class KernelBranch { hyperbolic, trigonometric, polynomial };

// Calogero-Francoise pair potential G.
//   hyperbolic:    G(x) = a + b_plus cosh(nu x) + b_minus sinh(nu |x|)
//   trigonometric: G(x) = a + b_plus cos(nu x)  + b_minus sin(nu |x|)
//   polynomial:    G(x) = a + b |x| + c x^2
// The peakon system is hyperbolic with (a, b_plus, b_minus, nu) = (0, 1, -1, 1).
struct KernelParams {
  KernelBranch branch = KernelBranch::hyperbolic;
  double a = 0.0;
  double b_plus = 1.0;
  double b_minus = -1.0;
  double nu = 1.0;
  double b = 0.0;
  double c = 0.0;

  static KernelParams peakon() { return {}; }
  static KernelParams hyperbolic(double a, double b_plus, double b_minus, double nu);
  static KernelParams trigonometric(double a, double b_plus, double b_minus, double nu);
  static KernelParams polynomial(double a, double b, double c);

  bool is_peakon() const noexcept;
  // Throws InvalidInput on non-finite parameters.
  void validate() const;

  double G(double x) const;
  // G'(x) away from the origin; the one-sided derivatives are discarded at x == 0.
  double dG(double x) const;
};

std::string to_string(KernelBranch branch);
KernelBranch kernel_branch_from_string(const std::string& name);

double hamiltonian(const PeakonConfig& config);
Real hamiltonian(const PeakonConfigX& config);

// ||u||^2_{H^1} = 4 H for multi-peakon profiles.
double h1_norm_squared(const PeakonConfig& config);

// Composite Gauss-Legendre quadrature of u^2 + u_x^2 over
// [q_1 - half_width, q_N + half_width], split at every peak.
double h1_norm_squared_quadrature(const PeakonConfig& config, double half_width = 40.0);

// A conservative solution snapshot: peakon part plus the singular part of the
// energy measure.  total_energy = 4 H(peaks) + sum of singular weights.
class ConservativeState {
 public:
  ConservativeState() = default;
  ConservativeState(PeakonConfig peaks, DiscreteMeasure singular_energy);

  const PeakonConfig& peaks() const noexcept { return peaks_; }
  const DiscreteMeasure& singular_energy() const noexcept { return singular_; }
  double total_energy() const noexcept { return total_energy_; }

 private:
  PeakonConfig peaks_;
  DiscreteMeasure singular_;
  double total_energy_ = 0.0;
};

std::vector<double> eval_profile(const PeakonConfig& config, std::span<const double> xs);

template <class T>
T profile_at(const BasicPeakonConfig<T>& config, const T& x) {
  using std::abs;
  using std::exp;
  T u = 0;
  for (const auto& pk : config) u += pk.p * exp(-abs(x - pk.q));
  return u;
}

// omega = u - u_xx = sum_n 2 p_n delta_{q_n}
DiscreteMeasure momentum_measure(const PeakonConfig& config);

double cf_hamiltonian(const KernelParams& params, const PeakonConfig& config);

// x -> x~ = tanh(x/2)/2 with weight w -> 4 cosh^2(x/2) w; maps into (-1/2, 1/2).
DiscreteMeasure liouville_string(const DiscreteMeasure& measure);
DiscreteMeasure liouville_string_inverse(const DiscreteMeasure& string_measure);

}  // namespace peakon
