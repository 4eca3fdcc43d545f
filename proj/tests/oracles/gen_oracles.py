#!/usr/bin/env python3
"""Independent reference values for the unit tests.

Everything here is computed with mpmath / sympy / fractions, without touching
the C++ code. Output is a header of constexpr doubles: tests/oracle_values.hpp.
"""
import sys
from fractions import Fraction

import mpmath as M
from sympy import factorint, isprime, primerange

M.mp.dps = 30


def eta0(t):
    t = M.mpf(t)
    if t <= 0:
        return M.mpf(0)
    v = M.log(2) - abs(M.log(2 * t))
    return 4 * v if v > 0 else M.mpf(0)


def eta1(t):
    t = M.mpf(t)
    d = max(M.mpf(0), M.mpf("0.2") - t, t - M.mpf("0.8"))
    v = 1 - 10 * d
    return v if v > 0 else M.mpf(0)


def Lambda(n):
    f = factorint(n)
    if len(f) != 1:
        return M.mpf(0)
    return M.log(next(iter(f)))


def direct_sum(eta, x, lo, hi, alpha=0, odd=False):
    s = M.mpc(0)
    for n in range(lo, hi + 1):
        if odd and n % 2 == 0:
            continue
        l = Lambda(n)
        if l:
            s += l * eta(M.mpf(n) / x) * M.expj(2 * M.pi * alpha * n)
    return s


def fourier(eta, pts, xi):
    f = lambda y: eta(y) * M.expj(2 * M.pi * xi * y)
    if not xi:
        return M.quad(f, pts)
    grid = sorted(set(M.linspace(pts[0], pts[-1], 400)) | set(M.mpf(p) for p in pts))
    return M.quad(f, grid)


def mellin(eta, pts, s):
    return M.quad(lambda t: eta(t) * t ** (s - 1), pts)


def main(out):
    vals = {}
    vals["kPsi1e4"] = M.fsum(Lambda(n) for n in range(2, 10001))
    vals["kPrimesBelow1e6"] = len(list(primerange(2, 10**6 + 1)))
    twin = sum(1 for p in primerange(2, 10**6 - 1) if isprime(p + 2))
    vals["kTwinPairs1e6"] = twin

    e0 = [M.mpf("0.25"), M.mpf("0.5"), 1]
    e1 = [M.mpf("0.1"), M.mpf("0.2"), M.mpf("0.8"), M.mpf("0.9")]
    vals["kEta0L1"] = M.quad(eta0, e0)
    vals["kEta0L2sq"] = M.quad(lambda t: eta0(t) ** 2, e0)
    vals["kEta1L1"] = M.quad(eta1, e1)
    vals["kEta1L2sq"] = M.quad(lambda t: eta1(t) ** 2, e1)

    F = fourier(eta0, e0, 100)
    vals["kEta0Fourier100Re"], vals["kEta0Fourier100Im"] = F.real, F.imag
    F = fourier(eta1, e1, M.mpf("3.7"))
    vals["kEta1Fourier37Re"], vals["kEta1Fourier37Im"] = F.real, F.imag
    Mz = mellin(eta1, e1, M.mpc("0.5", "14.134725141734693790457251983562"))
    vals["kEta1MellinRho1Re"], vals["kEta1MellinRho1Im"] = Mz.real, Mz.imag
    Mz = mellin(eta0, e0, M.mpc(2, 3))
    vals["kEta0Mellin2p3iRe"], vals["kEta0Mellin2p3iIm"] = Mz.real, Mz.imag

    S = direct_sum(eta0, 1000, 250, 1000)
    vals["kS1e3Eta0At0"] = S.real
    S = direct_sum(eta0, 1000, 250, 1000, M.mpf("0.1234"))
    vals["kS1e3Eta0At1234Re"], vals["kS1e3Eta0At1234Im"] = S.real, S.imag
    S = direct_sum(eta1, 10000, 1000, 9000)
    vals["kS1e4Eta1At0"] = S.real

    # Goldbach: least p with n - p prime, for a fixed even n.
    n = 60119912
    p = next(p for p in primerange(3, n) if isprime(n - p))
    vals["kGoldbachMaxLeastP"] = p

    # Continued fraction of 4 * (pi / 4) = pi with denominator <= 50.
    fr = Fraction(M.nstr(M.pi, 40)).limit_denominator(50)
    vals["kPiApproxNum"], vals["kPiApproxDen"] = fr.numerator, fr.denominator

    vals["kG6"] = M.fsum(M.mpf(1) / M.mpf(phi) for phi in (1, 1, 2, 2, 4))  # q = 1,2,3,5,6

    with open(out, "w") as f:
        f.write("#pragma once\n\n// Generated by tests/oracles/gen_oracles.py. Do not edit.\n\n")
        f.write("namespace oracle {\n\n")
        for k, v in vals.items():
            if isinstance(v, int):
                f.write(f"inline constexpr long long {k} = {v};\n")
            else:
                f.write(f"inline constexpr double {k} = {M.nstr(v, 20, min_fixed=-30, max_fixed=30)};\n")
        f.write("\n}  // namespace oracle\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/oracle_values.hpp")
