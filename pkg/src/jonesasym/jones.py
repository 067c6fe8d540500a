"""Exact evaluation of J_N(K; exp(c/N)).

Three evaluators are provided: the cyclotomic (Habiro) sum for the
figure-eight knot, the closed finite sum for torus knots in 0-framing, and
an independent contour-integral route for torus knots.  The two torus routes
are cross-checked against each other in the test suite.

The torus closed sum is

    J_N = q^{ab(1-N^2)/4} / (q^{N/2} - q^{-N/2})
          * sum_{k=-(N-1)/2}^{(N-1)/2} (q^{ab k^2 - (a+b) k + 1/2} - q^{ab k^2 - (a-b) k - 1/2})

with every power of q taken as exp(c * exponent / N).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

import mpmath
import numpy as np

from .knots import ConnectedSum, FigureEight, KnotExpr, Mirror, Torus, canonical_parts
from .quadrature import (DetourLine, PoleOnContourError, RotatedLine, integrate_detour_line,
                         integrate_gaussian_line, rotated_line_for_real_c)
from .torus import RationalParam, even_part, is_pole_index, residue_closed_form, tau_array

LOG_OVERFLOW = 700.0
# cancellation ratio sum|terms| / |sum| above which the closed sum goes multiprecision
CANCELLATION_LIMIT = 1e6


class DomainError(ValueError):
    """Evaluation point outside the domain of the requested method."""


class Method(str, Enum):
    HABIRO_SUM = "HabiroSum"
    TORUS_CLOSED_SUM = "TorusClosedSum"
    TORUS_CONTOUR = "TorusContour"
    PRODUCT = "Product"


@dataclass(frozen=True)
class EvalPoint:
    c: complex
    N: int

    def __post_init__(self):
        c = complex(self.c)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise DomainError("c must be finite")
        if int(self.N) != self.N or self.N < 2:
            raise DomainError("N must be an integer >= 2")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "N", int(self.N))

    @property
    def q(self) -> complex:
        return cmath.exp(self.c / self.N)

    @property
    def r(self) -> complex:
        """c / (2 pi i)."""
        return self.c / (2j * math.pi)


@dataclass(frozen=True)
class JonesValue:
    value: complex
    method: Method
    N: int
    c: complex
    log_domain: bool = False
    log_value: complex | None = None
    precision: int = 0  # decimal digits when a multiprecision path was used

    def log(self) -> complex:
        """Natural log of the value, valid even when ``value`` overflowed."""
        if self.log_value is not None:
            return self.log_value
        return cmath.log(self.value)


def _csum(arr) -> complex:
    """Compensated complex sum."""
    arr = np.asarray(arr, dtype=complex)
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


def _from_log(log_value: complex) -> complex:
    if log_value.real > 709:
        return complex(math.inf, 0)
    return cmath.exp(log_value)


# -- figure-eight ------------------------------------------------------------

def jones_fig8(point: EvalPoint) -> JonesValue:
    """Cyclotomic sum for the figure-eight knot, O(N).

    Each factor (q^{(N+j)/2} - q^{-(N+j)/2})(q^{(N-j)/2} - q^{-(N-j)/2}) is
    evaluated as 4 sinh(c(N+j)/2N) sinh(c(N-j)/2N).  Partial products whose
    log-magnitude passes 700 switch the whole sum to log-domain accumulation.
    """
    N, c = point.N, point.c
    j = np.arange(1, N, dtype=float)
    fac = 4 * np.sinh(c * (N + j) / (2 * N)) * np.sinh(c * (N - j) / (2 * N))
    zero = np.flatnonzero(fac == 0)
    if zero.size:
        fac = fac[:zero[0]]
    with np.errstate(divide="ignore"):
        logabs = np.cumsum(np.log(np.abs(fac)))
    if fac.size == 0 or np.max(logabs) <= LOG_OVERFLOW:
        terms = np.concatenate([[1.0 + 0j], np.cumprod(fac)])
        return JonesValue(_csum(terms), Method.HABIRO_SUM, N, c)
    logs = np.concatenate([[0j], np.cumsum(np.log(fac.astype(complex)))])
    top = float(np.max(logs.real))
    s = _csum(np.exp(logs - top))
    log_value = top + cmath.log(s)
    return JonesValue(_from_log(log_value), Method.HABIRO_SUM, N, c,
                      log_domain=True, log_value=log_value)


# -- torus closed sum --------------------------------------------------------

def _torus_exponents(N: int, a: int, b: int):
    """Integer arrays 4*E for the two exponent families of the closed sum."""
    ab = a * b
    m2 = N - 1 - 2 * np.arange(N, dtype=np.int64)
    base = ab * (1 - N * N) + ab * m2 * m2
    return base - 2 * (a + b) * m2 + 2, base - 2 * (a - b) * m2 - 2


def _torus_near_root(N, a, b, c, m, delta) -> complex:
    """Closed sum near c0 = 2 pi i m where numerator and denominator both vanish.

    Numerator and denominator are Taylor-expanded in delta = c - c0 and their
    common zero divided out.
    """
    ep, em = _torus_exponents(N, a, b)
    # exp(c0 * E / N) reduced exactly: c0*E/N = 2 pi i m (4E) / (4N)
    turns_p = np.mod(m * ep, 4 * N) / (4 * N)
    turns_m = np.mod(m * em, 4 * N) / (4 * N)
    up, um = ep / (4.0 * N), em / (4.0 * N)
    tp = np.exp(2j * np.pi * turns_p) * up
    tm = np.exp(2j * np.pi * turns_m) * um
    num = 0j
    den = 0j
    sign = -1.0 if m % 2 else 1.0
    for n in range(1, 60):
        term = _csum(tp) - _csum(tm)
        dterm = 2 * 0.5 ** n * (sign if n % 2 else 0.0) * delta ** (n - 1) / math.factorial(n)
        num += term
        den += dterm
        if n > 2 and abs(term) <= 1e-17 * abs(num) and abs(dterm) <= 1e-17 * abs(den):
            break
        tp = tp * up * delta / (n + 1)
        tm = tm * um * delta / (n + 1)
    return num / den


def _torus_sum_mp(N, a, b, c, dps) -> mpmath.mpc:
    """Closed sum at ``dps`` digits, stepping quadratic exponents by recurrence."""
    ab = a * b
    with mpmath.workdps(dps):
        c = mpmath.mpc(c)
        x = c / (4 * N)
        kappa = mpmath.exp(8 * ab * x)
        total = mpmath.mpc(0)
        abs_total = mpmath.mpf(0)
        for lin, const in ((2 * (a + b), 2), (2 * (a - b), -2)):
            m2 = N - 1
            e0 = ab * (1 - N * N) + ab * m2 * m2 - lin * m2 + const
            step0 = ab * (4 - 4 * m2) + 2 * lin
            term = mpmath.exp(x * e0)
            ratio = mpmath.exp(x * step0)
            part = mpmath.mpc(0)
            mag = mpmath.mpf(0)
            for _ in range(N):
                part += term
                mag += abs(term)
                term *= ratio
                ratio *= kappa
            total += part if const > 0 else -part
            abs_total += mag
        den = 2 * mpmath.sinh(c / 2)
        return total / den, abs_total, abs(total)


def _torus_sum_multiprecision(N, a, b, c, ratio_hint):
    # an exactly cancelled double sum gives no hint; start modestly and let the loop grow
    hint = math.log10(ratio_hint) if math.isfinite(ratio_hint) else 30.0
    dps = int(30 + max(hint, 0))
    while True:
        value, mag, numer = _torus_sum_mp(N, a, b, c, dps)
        need = 25 + (float(mpmath.log10(mag / numer)) if numer != 0 else dps)
        if need <= dps - 5:
            return value, dps
        dps = max(2 * dps, int(need) + 30)


def jones_torus_sum(point: EvalPoint, a: int, b: int) -> JonesValue:
    """0-framed J_N(T(a,b); exp(c/N)) from the closed finite sum over N terms.

    Points where q^{N/2} = q^{-N/2} are handled by dividing out the common
    zero; heavy cancellation (typically Re c < 0) triggers a multiprecision
    evaluation whose precision is raised until the sum is resolved.
    """
    Torus(a, b)
    N, c = point.N, point.c
    ep, em = _torus_exponents(N, a, b)
    emax = float(max(np.max(np.abs(ep)), np.max(np.abs(em)))) / (4 * N)
    m = round(c.imag / (2 * math.pi))
    delta = c - 2j * math.pi * m
    if abs(delta) * emax < 0.05:
        return JonesValue(_torus_near_root(N, a, b, c, m, delta), Method.TORUS_CLOSED_SUM, N, c)

    x = c / (4 * N)
    xp, xm = x * ep, x * em
    top = float(max(np.max(xp.real), np.max(xm.real)))
    tp, tm = np.exp(xp - top), np.exp(xm - top)
    s = _csum(tp) - _csum(tm)
    mag = float(np.sum(np.abs(tp)) + np.sum(np.abs(tm)))
    ratio = mag / abs(s) if s != 0 else math.inf
    if ratio > CANCELLATION_LIMIT:
        value, dps = _torus_sum_multiprecision(N, a, b, c, ratio)
        log_value = complex(mpmath.log(value))
        return JonesValue(_from_log(log_value), Method.TORUS_CLOSED_SUM, N, c,
                          log_domain=log_value.real > LOG_OVERFLOW,
                          log_value=log_value, precision=dps)
    den = 2 * cmath.sinh(c / 2)
    if top > LOG_OVERFLOW:
        log_value = top + cmath.log(s / den)
        return JonesValue(_from_log(log_value), Method.TORUS_CLOSED_SUM, N, c,
                          log_domain=True, log_value=log_value)
    return JonesValue(math.exp(top) * s / den, Method.TORUS_CLOSED_SUM, N, c)


# -- torus contour route -----------------------------------------------------

def _gauss_normalizer(c: complex, angle: float) -> complex:
    """sqrt(c/pi) on the branch fixed by integrating along direction ``angle``."""
    rot = cmath.exp(1j * angle)
    return rot * cmath.sqrt(c / math.pi / (rot * rot))


def _nearby_poles(a: int, b: int, center: complex, reach: float) -> list:
    ab = a * b
    k0 = center.imag * ab / math.pi
    span = int(reach * ab / math.pi) + 2
    out = []
    for k in range(math.floor(k0) - span, math.ceil(k0) + span + 1):
        if is_pole_index(a, b, k):
            out.append(1j * math.pi * k / ab)
    return out


def _contour_value(N: int, a: int, b: int, c: complex, angle: float, residues,
                   pole_center: int | None) -> complex:
    """Phi * (integral over the line shifted through c/2 + residue terms).

    ``residues`` holds (residue, phase) pairs already multiplied by
    exp(N f(z_j)) / exp(N f(c/2)).
    """
    ab = a * b
    center = c / 2
    rot = cmath.exp(2j * angle)
    decay = (rot / c).real
    if decay <= 0:
        raise PoleOnContourError("Gaussian does not decay along the chosen line")
    sigma = 1.0 / math.sqrt(N * ab * decay)
    B = even_part(a, b, center)

    def integrand(w):
        return B(w) * np.exp(-N * ab * w * w / c)

    shifted = [p - center for p in _nearby_poles(a, b, center, 8 * sigma + math.pi / ab)]
    line = RotatedLine(angle)
    for p in shifted:
        if pole_center is not None and abs(p) < 1e-12:
            continue
        if line.closest(p)[1] < 1e-12:
            raise PoleOnContourError(f"pole {p + center} lies on the contour")
    sing = [p for p in shifted if abs(p) > 1e-12] + [-p for p in shifted if abs(p) > 1e-12]

    if pole_center is None:
        integral = integrate_gaussian_line(integrand, line, sigma, fold=True, singularities=sing)
        extra = 0j
    else:
        others = [abs(p) for p in shifted if abs(p) > 1e-12]
        radius = min(0.25 * min(others), sigma)
        detour = DetourLine(angle, 0j, 0j, radius, below=True)
        integral = integrate_detour_line(integrand, detour, sigma, singularities=sing)
        # -(1/2) * small anticlockwise circle of tau(-w + c/2) around 0
        extra = 1j * math.pi * residue_closed_form(a, b, pole_center)

    bracket = integral + extra + sum((2j * math.pi * res * ph for res, ph in residues), 0j)
    g = math.sqrt(ab) / (2 * math.pi * _gauss_normalizer(c, angle) * 2 * cmath.sinh(c / 2))
    small = cmath.exp((ab - a / b - b / a) * c / (4 * N))
    return g * math.sqrt(N) * small * bracket * 2


def _residue_phases(N, a, b, r: RationalParam, jmax):
    """(Res_j, exp(N f(z_j) - N f(pi r i))) for j = 1..jmax."""
    ab = a * b
    out = []
    for j in range(1, jmax + 1):
        if not is_pole_index(a, b, j):
            continue
        if r.exact:
            turns = (N * j - Fraction(N * j * j, 2 * ab) / r.value - N * ab * r.value / 2) % 2
            phase = cmath.exp(1j * math.pi * float(turns))
        else:
            rf = float(r)
            turns = math.fmod(N * j - N * j * j / (2 * ab * rf) - N * ab * rf / 2, 2.0)
            phase = cmath.exp(1j * math.pi * turns)
        out.append((residue_closed_form(a, b, j), phase))
    return out


def jones_torus_contour(point: EvalPoint, a: int, b: int) -> JonesValue:
    """J_N(T(a,b)) from its contour-integral representation.

    Supported points: purely imaginary c = 2 pi i r with r not an integer
    (residues of the poles crossed by shifting the line are added
    explicitly, and a pole at pi r i is skirted by a detour), and real c with
    0 < |c| < 2 pi/(ab), integrated along a rotated line.
    """
    Torus(a, b)
    N, c = point.N, point.c
    ab = a * b
    if c == 0:
        return JonesValue(1 + 0j, Method.TORUS_CONTOUR, N, c)
    if abs(c.real) <= 1e-14 * abs(c):
        r = RationalParam.coerce(c.imag / (2 * math.pi), ab)
        if r.is_integer:
            raise DomainError("contour route needs c/(2 pi i) not an integer")
        if float(r) < 0:
            mirror = jones_torus_contour(EvalPoint(complex(0, -c.imag), N), a, b)
            return replace(mirror, value=mirror.value.conjugate(), c=c)
        cc = 2j * math.pi * float(r)
        k = r.pole_index(a, b)
        jmax = (k - 1) if k is not None else r.floor_abr(a, b)
        value = _contour_value(N, a, b, cc, math.pi / 4, _residue_phases(N, a, b, r, jmax), k)
        return JonesValue(value, Method.TORUS_CONTOUR, N, c)
    if abs(c.imag) <= 1e-14 * abs(c):
        try:
            line = rotated_line_for_real_c(c.real, ab)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        value = _contour_value(N, a, b, complex(c.real, 0), line.angle, [], None)
        return JonesValue(value, Method.TORUS_CONTOUR, N, c)
    raise DomainError("contour route supports purely imaginary c or small real c")


# -- dispatch ----------------------------------------------------------------

def jones_eval(knot: KnotExpr, point: EvalPoint, method: str = "auto") -> JonesValue:
    """J_N(K; exp(c/N)) for any supported knot expression.

    ``method`` selects the torus evaluator: ``"sum"``/``"auto"`` use the
    closed sum, ``"contour"`` the integral route.  Mirrors evaluate the
    inner knot at q^{-1}; connected sums multiply in a canonical order.
    """
    if isinstance(knot, FigureEight):
        return jones_fig8(point)
    if isinstance(knot, Torus):
        if method == "contour":
            return jones_torus_contour(point, knot.a, knot.b)
        if method in ("sum", "auto"):
            return jones_torus_sum(point, knot.a, knot.b)
        raise ValueError(f"unknown method {method!r}")
    if isinstance(knot, Mirror):
        inner = jones_eval(knot.inner, EvalPoint(-point.c, point.N), method)
        return replace(inner, c=point.c)
    if isinstance(knot, ConnectedSum):
        parts = [jones_eval(p, point, method) for p in canonical_parts(knot)]
        value = 1 + 0j
        for p in parts:
            value *= p.value
        if not any(p.log_domain for p in parts) and cmath.isfinite(value) and abs(value) < 1e300:
            methods = {p.method for p in parts}
            m = methods.pop() if len(methods) == 1 else Method.PRODUCT
            return JonesValue(value, m, point.N, point.c,
                              precision=max(p.precision for p in parts))
        log_value = sum((p.log() for p in parts), 0j)
        return JonesValue(_from_log(log_value), Method.PRODUCT, point.N, point.c,
                          log_domain=True, log_value=log_value,
                          precision=max(p.precision for p in parts))
    raise TypeError(f"not a knot expression: {knot!r}")
