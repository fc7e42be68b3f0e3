"""Independent high-precision reference values for the C++ test suite.

Everything here is computed from first principles with mpmath, without the
library's formulas: Jost solutions are propagated in (y, y') form with
hyperbolic free-flight matrices, norming integrals use adaptive quadrature,
Hankel determinants are plain determinants of moment matrices at 80 digits,
and the two-peakon trajectory is integrated by a Taylor-series ODE solver.

Run `python3 oracle.py > ../oracle_values.hpp` to regenerate.
"""

import mpmath as mp

mp.mp.dps = 50


def free_flight(d):
    h = d / 2
    return mp.matrix([[mp.cosh(h), 2 * mp.sinh(h)], [mp.sinh(h) / 2, mp.cosh(h)]])


def kick(kappa):
    return mp.matrix([[1, 0], [-kappa, 1]])


def phi_minus_right(peaks, z):
    """(y, y') of phi_- just right of the last peak."""
    x0 = peaks[0][1]
    v = mp.matrix([mp.exp(x0 / 2), mp.exp(x0 / 2) / 2])
    for i, (p, q) in enumerate(peaks):
        if i > 0:
            v = free_flight(q - peaks[i - 1][1]) * v
        v = kick(2 * p * z) * v
    return v


def wronskian(peaks, z):
    """Growth coefficient A of phi_- = A e^{x/2} + B e^{-x/2} at +inf."""
    xN = peaks[-1][1]
    y, yp = phi_minus_right(peaks, z)
    return (y + 2 * yp) * mp.exp(-xN / 2) / 2


def eigenvalues(peaks):
    n = len(peaks)
    nodes = [mp.mpf(k) / (4 * n) for k in range(n + 1)]
    vals = [wronskian(peaks, z) for z in nodes]
    V = mp.matrix([[z**j for j in range(n + 1)] for z in nodes])
    coeffs = mp.lu_solve(V, mp.matrix(vals))
    roots = mp.polyroots([coeffs[j] for j in reversed(range(n + 1))], maxsteps=200, extraprec=200)
    roots = sorted(mp.re(r) for r in roots)
    return [mp.findroot(lambda z: wronskian(peaks, z), r) for r in roots]


def phi_minus(peaks, z, x):
    x0 = peaks[0][1]
    if x <= x0:
        return mp.exp(x / 2), mp.exp(x / 2) / 2
    v = mp.matrix([mp.exp(x0 / 2), mp.exp(x0 / 2) / 2])
    last = x0
    for i, (p, q) in enumerate(peaks):
        if q >= x:
            break
        v = free_flight(q - last) * v
        v = kick(2 * p * z) * v
        last = q
    v = free_flight(x - last) * v
    return v[0], v[1]


def phi_plus(peaks, z, x):
    xN = peaks[-1][1]
    if x >= xN:
        return mp.exp(-x / 2), -mp.exp(-x / 2) / 2
    v = mp.matrix([mp.exp(-xN / 2), -mp.exp(-xN / 2) / 2])
    last = xN
    for p, q in reversed(peaks):
        if q <= x:
            break
        v = free_flight(q - last) * v
        # crossing leftwards: y'(q-) = y'(q+) + kappa y
        v = mp.matrix([v[0], v[1] + 2 * p * z * v[0]])
        last = q
    v = free_flight(x - last) * v
    return v[0], v[1]


def norming_constant(peaks, lam):
    def density(x):
        y, yp = phi_minus(peaks, lam, x)
        return yp**2 + y**2 / 4

    # tails beyond 80 contribute below e^-80; the growing component that
    # round-off leaves in phi_- would swamp an infinite range
    pts = [peaks[0][1] - 80] + [q for _, q in peaks] + [peaks[-1][1] + 80]
    return 1 / mp.quad(density, pts)


def coupling_constant(peaks, lam):
    x = peaks[0][1] - mp.mpf(1) / 3
    return phi_plus(peaks, lam, x)[0] / phi_minus(peaks, lam, x)[0]


def phase_shifts(sigma, couplings):
    out = []
    for i, lam in enumerate(sigma):
        xi = mp.log(abs(couplings[i]))
        for k, mu in enumerate(sigma):
            if k != i:
                xi += mp.sign(1 / lam - 1 / mu) * mp.log(abs(1 - lam / mu))
        out.append(xi)
    return out


def two_peakon_ode(peaks, t):
    (p1, q1), (p2, q2) = peaks

    def f(_, y):
        a, b, c, d = y  # p1, p2, q1, q2
        e = mp.exp(-abs(c - d))
        s = mp.sign(c - d)
        return [a * b * s * e, -a * b * s * e, a + b * e, b + a * e]

    sol = mp.odefun(f, 0, [mp.mpf(p1), mp.mpf(p2), mp.mpf(q1), mp.mpf(q2)], tol=mp.mpf(10) ** -30)
    return sol(t)


def emit(name, values):
    body = ", ".join(mp.nstr(v, 25) for v in values)
    print(f"inline constexpr double {name}[] = {{{body}}};")


def main():
    print("#pragma once")
    print("// Generated by tests/oracles/oracle.py; frozen reference values.")
    print("namespace oracle {")

    # symmetric antipeakon: blow-up instant from the closed form, and eigenvalues
    H0sq = 1 - mp.exp(-2)
    h0 = 2 * mp.sqrt(H0sq)
    P = mp.mpf(-2)
    emit("kAntipeakonBlowup", [mp.log((P - h0) / (P + h0)) / h0])
    emit("kAntipeakonEigenvalues", eigenvalues([(mp.mpf(1), mp.mpf(-1)), (mp.mpf(-1), mp.mpf(1))]))

    # (2, -1) at (-1, 1)
    peaks = [(mp.mpf(2), mp.mpf(-1)), (mp.mpf(-1), mp.mpf(1))]
    P0 = mp.mpf(1)
    Pd = mp.mpf(-3)
    q = mp.mpf(2)
    hh = mp.sqrt(Pd**2 * (1 - mp.exp(-q)) + P0**2 * mp.exp(-q))
    emit("kMixedBlowup", [mp.log((Pd - hh) / (Pd + hh)) / hh])

    # two positive peakons (1, 2) at (0, 1), state (p1, p2, q1, q2) at t = 1
    emit("kTwoPeakonAtOne", two_peakon_ode([(1, 0), (2, 1)], 1))

    # a generic mixed two-peakon configuration
    peaks = [(mp.mpf(1), mp.mpf(-1) / 2), (mp.mpf(7) / 10, mp.mpf(4) / 5)]
    sig = eigenvalues(peaks)
    emit("kPairEigenvalues", sig)
    emit("kPairGammas", [norming_constant(peaks, l) for l in sig])
    emit("kPairCouplings", [coupling_constant(peaks, l) for l in sig])

    peaks = [(mp.mpf(1), mp.mpf(-1) / 2), (mp.mpf(-7) / 10, mp.mpf(4) / 5)]
    sig = eigenvalues(peaks)
    emit("kMixedPairEigenvalues", sig)
    emit("kMixedPairGammas", [norming_constant(peaks, l) for l in sig])
    emit("kMixedPairCouplings", [coupling_constant(peaks, l) for l in sig])

    # three-peakon train (3, 2, 1) at (-10, 0, 10)
    peaks = [(mp.mpf(3), mp.mpf(-10)), (mp.mpf(2), mp.mpf(0)), (mp.mpf(1), mp.mpf(10))]
    sig = eigenvalues(peaks)
    cpl = [coupling_constant(peaks, l) for l in sig]
    emit("kTrainEigenvalues", sig)
    emit("kTrainCouplings", cpl)
    emit("kTrainShifts", phase_shifts(sig, cpl))

    # Hankel determinants of a three-peakon configuration by brute force
    peaks = [(mp.mpf(1), mp.mpf(-1)), (mp.mpf(1) / 2, mp.mpf(0)), (mp.mpf(2), mp.mpf(3) / 2)]
    sig = eigenvalues(peaks)
    gam = [norming_constant(peaks, l) for l in sig]
    mp.mp.dps = 80
    s = [1 + sum(gam)] + [sum(g * l**k for l, g in zip(sig, gam)) for k in range(1, 8)]
    d0 = [mp.mpf(1)] + [mp.det(mp.matrix([[s[i + j] for j in range(k)] for i in range(k)])) for k in range(1, 5)]
    d1 = [mp.mpf(1)] + [mp.det(mp.matrix([[s[i + j + 1] for j in range(k)] for i in range(k)])) for k in range(1, 4)]
    mp.mp.dps = 50
    emit("kTripleEigenvalues", sig)
    emit("kTripleGammas", gam)
    emit("kTripleDelta0", d0)
    emit("kTripleDelta1", d1)

    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
