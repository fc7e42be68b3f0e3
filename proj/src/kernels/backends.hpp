#pragma once

#include "peakon/kernels.hpp"

namespace peakon::kernels::detail {

namespace scalar {
void profile(std::span<const double> x, std::span<const double> p, std::span<const double> q,
             std::span<double> u);
void profile_slope(std::span<const double> x, std::span<const double> p,
                   std::span<const double> q, std::span<double> u, std::span<double> ux);
void paired_difference(std::span<const double> x, const PairedPeaks& pairs,
                       std::span<double> out);
void exp_nonpositive(std::span<const double> t, std::span<double> out);
}  // namespace scalar

extern const KernelTable kScalarTable;
#if defined(PEAKON_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace peakon::kernels::detail
