"""Large-N behaviour of J_N(K; exp(c/N)) over the c-plane.

Only regions with an established answer are classified; everything else
is reported as Unknown rather than extrapolated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .knots import ConnectedSum, FigureEight, KnotExpr, Mirror, Torus, XI, canonical_parts

DEFAULT_TOL = 1e-9


class RegimeKind(str, Enum):
    CONVERGES = "ConvergesToInvAlexander"
    POLYNOMIAL = "PolynomialGrowth"
    EXPONENTIAL = "ExponentialGrowth"
    OSCILLATES = "Oscillates"
    DEGENERATE = "DegenerateUnit"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    exponent: Fraction | None = None  # PolynomialGrowth only
    rate: complex | None = None       # ExponentialGrowth only: lim log(J_N)/N
    snapped_to: complex | None = None  # special point c was snapped to, if any

    def label(self) -> str:
        return self.kind.value

    def detail(self) -> str:
        """Exponent as p/q or rate as re+imi; empty for other kinds."""
        if self.exponent is not None:
            return str(self.exponent)
        if self.rate is not None:
            return f"{self.rate.real!r}{self.rate.imag:+}i"
        return ""


CONVERGES = Regime(RegimeKind.CONVERGES)
UNKNOWN = Regime(RegimeKind.UNKNOWN)


def exponential_rate(a: int, b: int, c: complex) -> complex:
    """lim log(J_N)/N = (1 - pi i/(abc) - abc/(4 pi i)) pi i for Re c < 0, Im c >= 0.

    The lower half-plane follows from J_N(conj q) = conj J_N(q).
    """
    if c.imag < 0:
        return exponential_rate(a, b, c.conjugate()).conjugate()
    ab = a * b
    return (1 - 1j * math.pi / (ab * c) - ab * c / (4j * math.pi)) * 1j * math.pi


def _torus_regime(a: int, b: int, c: complex, tol: float) -> Regime:
    ab = a * b
    edge = 2 * math.pi / ab
    mod = abs(c)
    if abs(c.real) <= tol:
        s = abs(c.imag)
        sign = 1 if c.imag > 0 else -1
        if abs(s - edge) <= tol:
            return Regime(RegimeKind.POLYNOMIAL, Fraction(1, 2), snapped_to=complex(0, sign * edge))
        m = round(s / (2 * math.pi))
        if m >= 1 and abs(s - 2 * math.pi * m) <= tol:
            if m == 1:
                return Regime(RegimeKind.POLYNOMIAL, Fraction(3, 2),
                              snapped_to=complex(0, sign * 2 * math.pi))
            return UNKNOWN
        if s < edge:
            return CONVERGES
        return Regime(RegimeKind.OSCILLATES)
    if abs(mod - edge) <= tol:
        return UNKNOWN
    if abs(c.imag) <= tol and mod < edge:
        return CONVERGES
    if mod > edge:
        if c.real > 0:
            return CONVERGES
        return Regime(RegimeKind.EXPONENTIAL, rate=exponential_rate(a, b, c))
    return UNKNOWN


def _fig8_regime(c: complex, tol: float) -> Regime:
    for target in (XI, -XI):
        if abs(c - target) <= tol:
            return Regime(RegimeKind.POLYNOMIAL, Fraction(2, 3), snapped_to=complex(target))
    if abs(c.imag) <= tol and abs(c.real) < XI:
        return CONVERGES
    return UNKNOWN


def _combine(parts: list) -> Regime:
    if any(p.kind is RegimeKind.UNKNOWN for p in parts):
        return UNKNOWN
    expo = [p for p in parts if p.kind is RegimeKind.EXPONENTIAL]
    if expo:
        return Regime(RegimeKind.EXPONENTIAL, rate=sum((p.rate for p in expo), 0j))
    if any(p.kind is RegimeKind.OSCILLATES for p in parts):
        return Regime(RegimeKind.OSCILLATES)
    poly = [p for p in parts if p.kind is RegimeKind.POLYNOMIAL]
    if poly:
        snaps = [p.snapped_to for p in poly if p.snapped_to is not None]
        return Regime(RegimeKind.POLYNOMIAL, sum((p.exponent for p in poly), Fraction(0)),
                      snapped_to=snaps[0] if snaps else None)
    return CONVERGES


def _classify(knot: KnotExpr, c: complex, tol: float) -> Regime:
    if isinstance(knot, FigureEight):
        return _fig8_regime(c, tol)
    if isinstance(knot, Torus):
        return _torus_regime(knot.a, knot.b, c, tol)
    if isinstance(knot, Mirror):
        inner = _classify(knot.inner, -c, tol)
        if inner.snapped_to is not None:
            return Regime(inner.kind, inner.exponent, inner.rate, -inner.snapped_to)
        return inner
    if isinstance(knot, ConnectedSum):
        return _combine([_classify(p, c, tol) for p in canonical_parts(knot)])
    raise TypeError(f"not a knot expression: {knot!r}")


def classify_regime(knot: KnotExpr, c: complex, tol: float = DEFAULT_TOL) -> Regime:
    """Regime of {J_N(K; exp(c/N))}_N.

    Points within ``tol`` of a special value (for example +-xi or
    +-2 pi i/(ab)) are snapped to it and the snap is recorded.
    """
    c = complex(c)
    if not (cmath.isfinite(c)):
        raise ValueError("c must be finite")
    if abs(c) <= tol:
        return Regime(RegimeKind.DEGENERATE, snapped_to=0j if c != 0 else None)
    return _classify(knot, c, tol)
