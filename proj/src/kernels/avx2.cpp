#include <immintrin.h>

#include "backends.hpp"
#include "exp_coeffs.hpp"

namespace peakon::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs4(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }
inline __m256d neg4(__m256d v) { return _mm256_xor_pd(v, _mm256_set1_pd(-0.0)); }

// Lane-wise twin of kernels::exp_nonpositive.
inline __m256d exp4(__m256d t) {
  const __m256d valid = _mm256_cmp_pd(t, _mm256_set1_pd(kExpFloor), _CMP_GE_OQ);
  const __m256d k = _mm256_floor_pd(
      _mm256_add_pd(_mm256_mul_pd(t, _mm256_set1_pd(kLog2e)), _mm256_set1_pd(0.5)));
  const __m256d nk = neg4(k);
  __m256d r = _mm256_fmadd_pd(nk, _mm256_set1_pd(kLn2Hi), t);
  r = _mm256_fmadd_pd(nk, _mm256_set1_pd(kLn2Lo), r);
  __m256d poly = _mm256_set1_pd(kExpCoeffs[kExpDegree]);
  for (int j = kExpDegree - 1; j >= 0; --j)
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(kExpCoeffs[j]));
  const __m256d shifted =
      _mm256_add_pd(_mm256_add_pd(k, _mm256_set1_pd(kExpBias)), _mm256_set1_pd(kShifter));
  const __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(shifted), 52);
  return _mm256_and_pd(_mm256_mul_pd(poly, _mm256_castsi256_pd(bits)), valid);
}

std::size_t vector_end(std::size_t n) { return n - n % kLanes; }

void profile(std::span<const double> x, std::span<const double> p, std::span<const double> q,
             std::span<double> u) {
  const std::size_t end = vector_end(x.size());
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t n = 0; n < p.size(); ++n) {
      const __m256d e = exp4(neg4(abs4(_mm256_sub_pd(xv, _mm256_set1_pd(q[n])))));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(p[n]), e));
    }
    _mm256_storeu_pd(u.data() + i, acc);
  }
  scalar::profile(x.subspan(end), p, q, u.subspan(end));
}

void profile_slope(std::span<const double> x, std::span<const double> p,
                   std::span<const double> q, std::span<double> u, std::span<double> ux) {
  const std::size_t end = vector_end(x.size());
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d acc = _mm256_setzero_pd();
    __m256d slope = _mm256_setzero_pd();
    for (std::size_t n = 0; n < p.size(); ++n) {
      const __m256d qn = _mm256_set1_pd(q[n]);
      const __m256d e = exp4(neg4(abs4(_mm256_sub_pd(xv, qn))));
      const __m256d term = _mm256_mul_pd(_mm256_set1_pd(p[n]), e);
      const __m256d lt = _mm256_and_pd(_mm256_cmp_pd(xv, qn, _CMP_LT_OQ), one);
      const __m256d gt = _mm256_and_pd(_mm256_cmp_pd(xv, qn, _CMP_GT_OQ), one);
      acc = _mm256_add_pd(acc, term);
      slope = _mm256_add_pd(slope, _mm256_mul_pd(_mm256_sub_pd(lt, gt), term));
    }
    _mm256_storeu_pd(u.data() + i, acc);
    _mm256_storeu_pd(ux.data() + i, slope);
  }
  scalar::profile_slope(x.subspan(end), p, q, u.subspan(end), ux.subspan(end));
}

void paired_difference(std::span<const double> x, const PairedPeaks& pairs,
                       std::span<double> out) {
  const std::size_t end = vector_end(x.size());
  for (std::size_t i = 0; i < end; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t m = 0; m < pairs.p.size(); ++m) {
      const __m256d qm = _mm256_set1_pd(pairs.q[m]);
      const __m256d cm = _mm256_set1_pd(pairs.c[m]);
      const __m256d lo = _mm256_min_pd(qm, cm);
      const __m256d hi = _mm256_max_pd(qm, cm);
      const __m256d ec = exp4(neg4(abs4(_mm256_sub_pd(xv, cm))));
      const __m256d eq = exp4(neg4(abs4(_mm256_sub_pd(xv, qm))));
      const __m256d direct = _mm256_sub_pd(_mm256_mul_pd(_mm256_set1_pd(pairs.p[m]), eq),
                                           _mm256_mul_pd(_mm256_set1_pd(pairs.h[m]), ec));
      const __m256d right_side = _mm256_cmp_pd(xv, hi, _CMP_GE_OQ);
      const __m256d coeff = _mm256_blendv_pd(_mm256_set1_pd(pairs.left[m]),
                                             _mm256_set1_pd(pairs.right[m]), right_side);
      const __m256d outer = _mm256_mul_pd(ec, coeff);
      const __m256d between = _mm256_and_pd(_mm256_cmp_pd(xv, lo, _CMP_GT_OQ),
                                            _mm256_cmp_pd(xv, hi, _CMP_LT_OQ));
      acc = _mm256_add_pd(acc, _mm256_blendv_pd(outer, direct, between));
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  scalar::paired_difference(x.subspan(end), pairs, out.subspan(end));
}

void exp_nonpositive(std::span<const double> t, std::span<double> out) {
  const std::size_t end = vector_end(t.size());
  for (std::size_t i = 0; i < end; i += kLanes)
    _mm256_storeu_pd(out.data() + i, exp4(_mm256_loadu_pd(t.data() + i)));
  scalar::exp_nonpositive(t.subspan(end), out.subspan(end));
}

}  // namespace

const KernelTable kAvx2Table = {
    &profile,
    &profile_slope,
    &paired_difference,
    &exp_nonpositive,
};

}  // namespace peakon::kernels::detail
