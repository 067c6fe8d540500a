"""Knot expressions, Alexander polynomials and their logarithmic zero sets.

Only two families are supported: the figure-eight knot and torus knots
T(a, b), closed under mirror image and connected sum.  Alexander
polynomials use the symmetric normalization Delta(K; 1) = 1 and are
evaluated through ``z`` with ``t = exp(2 z)`` so that half-integer powers
of ``t`` need no branch choice.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

XI = math.log((3.0 + math.sqrt(5.0)) / 2.0)

# |sinh| below this switches a torus factor to the local Taylor form
REMOVABLE_TOL = 1e-8


class KnotError(ValueError):
    """Invalid knot construction."""


class KnotParseError(ValueError):
    """Malformed knot expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class FigureEight:
    def __str__(self) -> str:
        return "fig8"


@dataclass(frozen=True)
class Torus:
    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise KnotError("torus parameters must be integers")
        if self.a < 2 or self.b < 2:
            raise KnotError(f"t({self.a},{self.b}): need a, b >= 2")
        if math.gcd(self.a, self.b) != 1:
            raise KnotError(f"t({self.a},{self.b}): a and b must be coprime")

    def __str__(self) -> str:
        return f"t({self.a},{self.b})"


@dataclass(frozen=True)
class Mirror:
    inner: "KnotExpr"

    def __str__(self) -> str:
        return f"mirror({self.inner})"


@dataclass(frozen=True)
class ConnectedSum:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise KnotError("connected sum needs at least one part")
        object.__setattr__(self, "parts", parts)

    def __str__(self) -> str:
        return "#".join(str(p) for p in self.parts)


KnotExpr = Union[FigureEight, Torus, Mirror, ConnectedSum]


def canonical_parts(knot: ConnectedSum) -> list:
    """Parts in a fixed order, so products are independent of input order."""
    return sorted(knot.parts, key=str)


def leaves(knot: KnotExpr, mirrored: bool = False):
    """Yield ``(leaf, mirrored)`` for every prime summand."""
    if isinstance(knot, ConnectedSum):
        for part in canonical_parts(knot):
            yield from leaves(part, mirrored)
    elif isinstance(knot, Mirror):
        yield from leaves(knot.inner, not mirrored)
    else:
        yield knot, mirrored


# -- parsing -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.data = text.encode("utf-8")
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> bytes:
        self.skip_ws()
        return self.data[self.pos:self.pos + 1]

    def expect(self, token: bytes):
        self.skip_ws()
        if not self.data.startswith(token, self.pos):
            raise KnotParseError(f"expected {token.decode()!r}", self.pos)
        self.pos += len(token)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos:self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            raise KnotParseError("expected integer", start)
        return int(self.data[start:self.pos])

    def expr(self) -> KnotExpr:
        parts = [self.atom()]
        while self.peek() == b"#":
            self.pos += 1
            parts.append(self.atom())
        if len(parts) == 1:
            return parts[0]
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, ConnectedSum) else [p])
        return ConnectedSum(tuple(flat))

    def atom(self) -> KnotExpr:
        self.skip_ws()
        start = self.pos
        rest = self.data[self.pos:]
        if rest.startswith(b"fig8"):
            self.pos += 4
            return FigureEight()
        if rest.startswith(b"mirror"):
            self.pos += 6
            self.expect(b"(")
            inner = self.expr()
            self.expect(b")")
            return Mirror(inner)
        if rest.startswith(b"t"):
            self.pos += 1
            self.expect(b"(")
            a = self.integer()
            self.expect(b",")
            b = self.integer()
            self.expect(b")")
            try:
                return Torus(a, b)
            except KnotError as exc:
                raise KnotParseError(str(exc), start) from None
        if rest.startswith(b"("):
            self.pos += 1
            inner = self.expr()
            self.expect(b")")
            return inner
        raise KnotParseError("expected 'fig8', 't(a,b)' or 'mirror(...)'", start)


def parse_knot(text: str) -> KnotExpr:
    """Parse ``fig8``, ``t(a,b)``, ``mirror(<expr>)`` and ``<expr>#<expr>``.

    Whitespace is ignored and ``#`` chains are flattened into a single
    :class:`ConnectedSum`.
    """
    p = _Parser(text)
    knot = p.expr()
    p.skip_ws()
    if p.pos != len(p.data):
        raise KnotParseError("unexpected trailing input", p.pos)
    return knot


def format_knot(knot: KnotExpr) -> str:
    return str(knot)


# -- Alexander polynomial ----------------------------------------------------

def _nearest_grid_point(z: complex, k: int) -> int:
    """Integer m with k*z closest to m*pi*i."""
    return round((k * z).imag / math.pi)


def _sinh_factor(k: int, z0: Fraction, delta: complex):
    """sinh(k*(i*pi*z0 + delta)) split as ``delta**order * value``.

    ``z0`` is an exact rational multiple of i*pi so that vanishing of
    sinh(k*z0) is decided exactly.
    """
    turns = k * z0
    if turns.denominator == 1:
        sign = -1.0 if turns.numerator % 2 else 1.0
        d = k * delta
        d2 = d * d
        series = 1 + d2 / 6 * (1 + d2 / 20 * (1 + d2 / 42))
        return 1, sign * k * series
    angle = math.pi * float(turns)
    return 0, (math.cos(angle) * cmath.sinh(k * delta)
               + 1j * math.sin(angle) * cmath.cosh(k * delta))


def _torus_ratio(num_ks, den_ks, z: complex, center: Fraction):
    """prod sinh(k z) over num_ks / prod over den_ks, expanded at i*pi*center."""
    delta = z - 1j * math.pi * float(center)
    order = 0
    value = 1 + 0j
    for k in num_ks:
        o, v = _sinh_factor(k, center, delta)
        order += o
        value *= v
    for k in den_ks:
        o, v = _sinh_factor(k, center, delta)
        order -= o
        value /= v
    return order, delta, value


def _removable_center(a: int, b: int, z: complex, den_ks) -> Fraction | None:
    for k in den_ks:
        if abs(cmath.sinh(k * z)) < REMOVABLE_TOL:
            return Fraction(_nearest_grid_point(z, k), k)
    return None


def _alexander_torus(a: int, b: int, z: complex) -> complex:
    num_ks, den_ks = (a * b, 1), (a, b)
    center = _removable_center(a, b, z, den_ks)
    if center is None:
        return (cmath.sinh(a * b * z) * cmath.sinh(z)
                / (cmath.sinh(a * z) * cmath.sinh(b * z)))
    order, delta, value = _torus_ratio(num_ks, den_ks, z, center)
    if order == 0:
        return value
    return value * delta ** order


def alexander_eval(knot: KnotExpr, z: complex) -> complex:
    """Delta(K; exp(2 z)) in the symmetric normalization."""
    z = complex(z)
    if isinstance(knot, FigureEight):
        return 3 - 2 * cmath.cosh(2 * z)
    if isinstance(knot, Torus):
        return _alexander_torus(knot.a, knot.b, z)
    if isinstance(knot, Mirror):
        return alexander_eval(knot.inner, z)
    if isinstance(knot, ConnectedSum):
        out = 1 + 0j
        for part in canonical_parts(knot):
            out *= alexander_eval(part, z)
        return out
    raise TypeError(f"not a knot expression: {knot!r}")


def alexander_at(knot: KnotExpr, c: complex) -> complex:
    """Delta(K; exp(c))."""
    return alexander_eval(knot, complex(c) / 2)


# -- logarithmic zeros -------------------------------------------------------

@dataclass(frozen=True)
class LogZero:
    z: complex

    @property
    def modulus(self) -> float:
        return abs(self.z)

    @property
    def argument(self) -> float:
        return cmath.phase(self.z) % (2 * math.pi)


def _log_zeros_leaf(knot, window: float) -> list:
    out = []
    if isinstance(knot, FigureEight):
        if XI <= window:
            nmax = int(math.sqrt(max(window * window - XI * XI, 0.0)) / (2 * math.pi)) + 1
            for n in range(-nmax, nmax + 1):
                for s in (1, -1):
                    z = complex(s * XI, 2 * math.pi * n)
                    if abs(z) <= window:
                        out.append(z)
    elif isinstance(knot, Torus):
        ab = knot.a * knot.b
        kmax = int(window * ab / (2 * math.pi)) + 1
        for k in range(-kmax, kmax + 1):
            if k % knot.a == 0 or k % knot.b == 0:
                continue
            z = complex(0.0, 2 * math.pi * k / ab)
            if abs(z) <= window:
                out.append(z)
    return out


def log_zeros(knot: KnotExpr, window: float) -> list:
    """Elements of Lambda(K) with modulus at most ``window``.

    Sorted by modulus, then by argument taken in [0, 2 pi).  Connected sums
    take the union over their summands; mirrors do not change the set.
    """
    if not window > 0:
        raise ValueError("window must be positive")
    seen = {}
    for leaf, _ in leaves(knot):
        for z in _log_zeros_leaf(leaf, window):
            seen.setdefault((round(z.real, 12), round(z.imag, 12)), z)
    zeros = [LogZero(z) for z in seen.values()]
    zeros.sort(key=lambda lz: (round(lz.modulus, 12), lz.argument))
    return zeros


def min_log_zero(knot: KnotExpr) -> LogZero:
    """A minimal-modulus element of Lambda(K).

    Ties prefer positive imaginary part, then positive real part.
    """
    # every supported leaf has a zero of modulus <= pi/3 or xi
    window = max(XI, math.pi / 3) * 1.001
    zeros = log_zeros(knot, window)
    mod = min(round(z.modulus, 12) for z in zeros)
    tied = [z for z in zeros if round(z.modulus, 12) == mod]
    return max(tied, key=lambda lz: (lz.z.imag > 0, lz.z.imag, lz.z.real > 0, lz.z.real))
