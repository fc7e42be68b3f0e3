#pragma once

// Shared constants of the exp(t), t <= 0, approximation used by every kernel
// backend: Cody-Waite reduction t = k ln2 + r with |r| <= ln2/2, degree-13
// Taylor polynomial in r evaluated by FMA Horner, then scaling by 2^k built
// from exponent bits.
namespace peakon::kernels::detail {

inline constexpr double kLog2e = 0x1.71547652b82fep+0;
inline constexpr double kLn2Hi = 0x1.62e42fefa39efp-1;
inline constexpr double kLn2Lo = 0x1.abc9e3b39803fp-56;
// exp(t) is flushed to zero below this (2^k would leave the normal range).
inline constexpr double kExpFloor = -708.39;
inline constexpr double kExpBias = 1023.0;
inline constexpr double kShifter = 0x1p52;

inline constexpr int kExpDegree = 13;
// 1/j!, j = 0..13
inline constexpr double kExpCoeffs[kExpDegree + 1] = {
    1.0,
    1.0,
    0.5,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
    1.0 / 6227020800.0,
};

}  // namespace peakon::kernels::detail
