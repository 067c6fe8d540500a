"""Multiprecision versions of the torus expansion and closed sum.

Used where truncation errors fall below double-precision rounding, e.g.
measuring how the error of a truncated series decays with N.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .jones import _torus_sum_mp
from .torus import RationalParam, WrongCaseError, is_pole_index, laurent_radius

TRAPEZOID_NODES = 512


def _tau_mp(a, b, z):
    return 2 * mpmath.sinh(a * z) * mpmath.sinh(b * z) / mpmath.sinh(a * b * z)


def laurent_gammas_mp(a: int, b: int, r: Fraction, kmax: int, dps: int = 50) -> list:
    """gamma_{a,b,r}(k), k = 0..kmax, from an mp trapezoid rule on a circle."""
    rho = laurent_radius(a, b, RationalParam(Fraction(r)))
    m = TRAPEZOID_NODES
    with mpmath.workdps(dps):
        center = 1j * mpmath.pi * mpmath.mpf(r.numerator) / r.denominator
        nodes = [rho * mpmath.expjpi(mpmath.mpf(2 * i) / m) for i in range(m)]
        vals = [(_tau_mp(a, b, center + w) + _tau_mp(a, b, center - w)) / 2 for w in nodes]
        out = []
        for k in range(kmax + 1):
            n = 2 * k
            coef = mpmath.fsum(v * mpmath.expjpi(-mpmath.mpf(2 * i * n) / m)
                               for i, v in enumerate(vals)) / m / mpmath.mpf(rho) ** n
            out.append(mpmath.factorial(n) * coef)
        return out


def expansion_in_P_mp(a: int, b: int, r: Fraction, N: int, kmax: int, dps: int = 50):
    """Total of the truncated non-pole expansion at ``dps`` digits (r > 0 rational)."""
    r = Fraction(r)
    ab = a * b
    if r <= 0 or r.denominator == 1:
        raise WrongCaseError("need positive non-integer r")
    if (ab * r).denominator == 1 and is_pole_index(a, b, int(ab * r)):
        raise WrongCaseError("pi*r*i is a pole")
    gammas = laurent_gammas_mp(a, b, r, kmax, dps)
    with mpmath.workdps(dps):
        rm = mpmath.mpf(r.numerator) / r.denominator
        pi = mpmath.pi
        pref = mpmath.exp((ab - mpmath.mpf(a) / b - mpmath.mpf(b) / a) * pi * rm * 1j / (2 * N))
        pref /= mpmath.sinpi(rm)
        x = pi * rm * 1j / (2 * ab * N)
        series = mpmath.fsum(gammas[k] / mpmath.factorial(k) * x ** k for k in range(kmax + 1)) / 2j
        amp = mpmath.sqrt(ab * N) / (2 * mpmath.sqrt(2 * rm)) * mpmath.expjpi(-mpmath.mpf(1) / 4)
        osc = mpmath.mpc(0)
        for j in range(1, int(ab * r) + 1):
            sign = -1 if (N * j + j + 1) % 2 else 1
            R = mpmath.mpf(4) / ab * mpmath.sinpi(mpmath.mpf(j) / a) * mpmath.sinpi(mpmath.mpf(j) / b)
            turns = (-N * (ab * r / 2 + Fraction(j * j, 2 * ab) / r)) % 2
            phase = mpmath.expjpi(mpmath.mpf(turns.numerator) / turns.denominator)
            osc += sign * R * phase
        return pref * (series + amp * osc)


def torus_sum_mp(a: int, b: int, r: Fraction, N: int, dps: int = 50):
    """Closed sum for J_N(T(a,b); exp(2 pi i r/N)) at ``dps`` digits, r exact."""
    r = Fraction(r)
    with mpmath.workdps(dps):
        c = 2j * mpmath.pi * mpmath.mpf(r.numerator) / r.denominator
    return _torus_sum_mp(N, a, b, c, dps)[0]
