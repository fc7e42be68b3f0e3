#pragma once

#include <span>
#include <string_view>

// Data-parallel grid kernels for peakon profiles. Each kernel exists as a
// scalar reference and (on x86-64) an AVX2/FMA variant; both evaluate the same
// operation sequence, so results agree bit for bit. The active backend is
// chosen once at startup from CPU features and may be overridden with
// PEAKON_KERNELS=scalar|avx2 or select_backend().
namespace peakon::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);
bool backend_supported(Backend backend);
Backend active_backend();
// Throws InvalidInput when the backend is not supported on this CPU/build.
void select_backend(Backend backend);

// Paired (exact, reference) peaks for difference evaluation. For pair m the
// caller supplies p, q, h, c and the two outer coefficients
//   left  = h expm1(-(q - c)) + (p - h) exp(-(q - c))
//   right = h expm1(  q - c ) + (p - h) exp(  q - c )
// computed in higher precision, so that far from [min(q,c), max(q,c)]
//   p e^{-|x-q|} - h e^{-|x-c|} = e^{-|x-c|} * (left or right)
// retains full relative accuracy when the pair nearly coincides.
struct PairedPeaks {
  std::span<const double> p, q, h, c, left, right;
};

struct KernelTable {
  // u[i] = sum_n p[n] exp(-|x[i] - q[n]|)
  void (*profile)(std::span<const double> x, std::span<const double> p,
                  std::span<const double> q, std::span<double> u);
  // additionally ux[i] = -sum_n sgn(x[i] - q[n]) p[n] exp(-|x[i] - q[n]|), sgn(0) = 0
  void (*profile_slope)(std::span<const double> x, std::span<const double> p,
                        std::span<const double> q, std::span<double> u, std::span<double> ux);
  // out[i] = sum_m (p_m e^{-|x-q_m|} - h_m e^{-|x-c_m|})
  void (*paired_difference)(std::span<const double> x, const PairedPeaks& pairs,
                            std::span<double> out);
  // elementwise exp for arguments <= 0 (arguments below -708.39 give 0)
  void (*exp_nonpositive)(std::span<const double> t, std::span<double> out);
};

const KernelTable& table(Backend backend);
const KernelTable& active();

inline void profile(std::span<const double> x, std::span<const double> p,
                    std::span<const double> q, std::span<double> u) {
  active().profile(x, p, q, u);
}
inline void profile_slope(std::span<const double> x, std::span<const double> p,
                          std::span<const double> q, std::span<double> u,
                          std::span<double> ux) {
  active().profile_slope(x, p, q, u, ux);
}
inline void paired_difference(std::span<const double> x, const PairedPeaks& pairs,
                              std::span<double> out) {
  active().paired_difference(x, pairs, out);
}

// Scalar exp(t) for t <= 0 with the same polynomial and rounding sequence as
// every vector backend.
double exp_nonpositive(double t);

}  // namespace peakon::kernels
