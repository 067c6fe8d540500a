"""Asymptotics of J_N(T(a,b); exp(2 pi i r / N)).

The building blocks are tau(z) = 2 sinh(a z) sinh(b z) / sinh(a b z), its
poles on the imaginary axis, and the even part B(w) of tau about the centre
pi*r*i, whose Taylor coefficients gamma(k) drive the power series in 1/N.
Residues of tau at the poles crossed when the integration line is shifted
give the sqrt(N) (and, at r = 1, N**1.5) terms.

All k-series here are asymptotic: they are truncated at ``kmax`` and the
first omitted term is reported as an error estimate.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .knots import KnotExpr, Torus, _sinh_factor, alexander_eval
from .quadrature import Circle, cauchy_coefficients

# circle radius for Laurent coefficients, as a fraction of the pole spacing pi/(ab)
LAURENT_RADIUS = 0.4
PROMOTE_TOL = 1e-12


class PoleHit(ValueError):
    """tau evaluated at one of its poles."""

    def __init__(self, pole: complex):
        super().__init__(f"tau has a pole at {pole}")
        self.pole = pole


class WrongCaseError(ValueError):
    """Expansion requested for a parameter outside its case."""


# -- tau ---------------------------------------------------------------------

def tau_array(a: int, b: int, z) -> np.ndarray:
    """Vectorized tau_{T(a,b)}, written to avoid overflow for large |Re z|."""
    z = np.asarray(z, dtype=complex)
    s = np.where(z.real < 0, -1.0, 1.0)
    u = s * z
    num = np.expm1(-2 * a * u) * np.expm1(-2 * b * u)
    den = -np.expm1(-2 * a * b * u)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        out = s * np.exp((a + b - a * b) * u) * num / den
    near = np.abs(den) < 1e-8
    if np.any(near):
        # removable points need the local expansion; poles become inf
        out = np.array(out, dtype=complex)
        for idx in zip(*np.nonzero(near)) if out.ndim else [()]:
            try:
                out[idx] = tau_eval(a, b, complex(z[idx]))
            except PoleHit:
                out[idx] = complex(np.inf, 0)
    return out


def tau_eval(a: int, b: int, z: complex) -> complex:
    """tau_{T(a,b)}(z), with removable points resolved and poles reported."""
    z = complex(z)
    ab = a * b
    if abs(cmath.sinh(ab * z)) >= 1e-8:
        return 2 * cmath.sinh(a * z) * cmath.sinh(b * z) / cmath.sinh(ab * z)
    m = round((ab * z).imag / math.pi)
    center = Fraction(m, ab)
    delta = z - 1j * math.pi * float(center)
    order, value = 0, 2 + 0j
    for k in (a, b):
        o, v = _sinh_factor(k, center, delta)
        order += o
        value *= v
    o, v = _sinh_factor(ab, center, delta)
    order -= o
    value /= v
    if order < 0:
        if delta == 0:
            raise PoleHit(1j * math.pi * float(center))
        return value / delta
    return value * delta ** order


def tau_knot(knot: KnotExpr, z: complex) -> complex:
    """tau_K(z) = 2 sinh(z) / Delta(K; exp(2 z)) for any supported knot."""
    if isinstance(knot, Torus):
        return tau_eval(knot.a, knot.b, z)
    delta = alexander_eval(knot, z)
    if delta == 0:
        raise PoleHit(complex(z))
    return 2 * cmath.sinh(complex(z)) / delta


def is_pole_index(a: int, b: int, k: int) -> bool:
    return k % a != 0 and k % b != 0


def poles(a: int, b: int, kmin: int, kmax: int) -> list:
    """Poles k*pi*i/(ab) of tau with kmin <= k <= kmax."""
    ab = a * b
    return [1j * math.pi * k / ab for k in range(kmin, kmax + 1) if is_pole_index(a, b, k)]


def residue_closed_form(a: int, b: int, j: int) -> complex:
    """Residue of tau at j*pi*i/(ab)."""
    if not is_pole_index(a, b, j):
        return 0.0
    sign = -1.0 if j % 2 == 0 else 1.0
    return sign * 2 * _sin_pi(Fraction(j, a)) * _sin_pi(Fraction(j, b)) / (a * b)


def amplitude_R(a: int, b: int, j: int) -> float:
    return 4 / (a * b) * _sin_pi(Fraction(j, a)) * _sin_pi(Fraction(j, b))


def chern_simons_CS(a: int, b: int, j: int) -> complex:
    return cmath.exp(1j * math.pi * j * j / (2 * a * b))


def _sin_pi(x) -> float:
    """sin(pi*x), exact zeros for integer rationals."""
    if isinstance(x, Fraction):
        x = x % 2
        if x.denominator == 1:
            return 0.0
        if x.denominator == 2:
            return 1.0 if x == Fraction(1, 2) else -1.0
        return math.sin(math.pi * float(x))
    return math.sin(math.pi * x)


def _exp_i_pi(x) -> complex:
    """exp(i*pi*x) with exact reduction of rational ``x``."""
    if isinstance(x, Fraction):
        x = x % 2
    else:
        x = math.fmod(x, 2.0)
    return cmath.exp(1j * math.pi * float(x))


# -- the parameter r ---------------------------------------------------------

@dataclass(frozen=True)
class RationalParam:
    """The parameter r, exact when supplied as a rational."""

    value: Fraction | float

    @classmethod
    def coerce(cls, r, ab: int | None = None) -> "RationalParam":
        if isinstance(r, RationalParam):
            return r
        if isinstance(r, (int, Fraction)):
            return cls(Fraction(r))
        if isinstance(r, str):
            return cls(Fraction(r))
        r = float(r)
        if ab is not None:
            k = round(r * ab)
            if abs(r - k / ab) <= PROMOTE_TOL:
                exact = Fraction(k, ab)
                if r != float(exact):
                    warnings.warn(f"r={r!r} promoted to exact rational {exact}", stacklevel=2)
                return cls(exact)
        return cls(r)

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def __float__(self) -> float:
        return float(self.value)

    @property
    def is_integer(self) -> bool:
        if self.exact:
            return self.value.denominator == 1
        return float(self.value).is_integer()

    def ab_r(self, a: int, b: int):
        return a * b * self.value

    def floor_abr(self, a: int, b: int) -> int:
        return math.floor(self.ab_r(a, b))

    def pole_index(self, a: int, b: int) -> int | None:
        """k if pi*r*i is the pole k*pi*i/(ab), else None."""
        if not self.exact:
            return None
        k = self.ab_r(a, b)
        if k.denominator != 1 or k == 0:
            return None
        k = int(k)
        return k if is_pole_index(a, b, k) else None

    def is_pole(self, a: int, b: int) -> bool:
        return self.pole_index(a, b) is not None

    def __neg__(self) -> "RationalParam":
        return RationalParam(-self.value)


# -- Laurent data ------------------------------------------------------------

@dataclass(frozen=True)
class LaurentData:
    center: complex
    gammas: tuple
    residue: complex | None = None
    radius: float = 0.0
    odd_leakage: float = 0.0


def _nearest_pole_distance(a: int, b: int, center_im: float, exclude_center: bool) -> float:
    """Distance along the imaginary axis from i*center_im to the nearest other pole."""
    ab = a * b
    k0 = center_im * ab / math.pi
    best = math.inf
    for k in range(math.floor(k0) - 2 * ab, math.ceil(k0) + 2 * ab + 1):
        if not is_pole_index(a, b, k):
            continue
        d = abs(math.pi * k / ab - center_im)
        if exclude_center and d < 1e-9:
            continue
        best = min(best, d)
    return best


def laurent_radius(a: int, b: int, r: RationalParam) -> float:
    """Circle radius below the distance from pi*r*i to the nearest other pole."""
    ab = a * b
    d = _nearest_pole_distance(a, b, math.pi * float(r), exclude_center=r.is_pole(a, b))
    return min(LAURENT_RADIUS * math.pi / ab, 0.5 * d)


def even_part(a: int, b: int, center: complex):
    def B(w):
        w = np.asarray(w, dtype=complex)
        return 0.5 * (tau_array(a, b, center + w) + tau_array(a, b, center - w))
    return B


@lru_cache(maxsize=256)
def _laurent_cached(a: int, b: int, rvalue, exact: bool, kmax: int) -> LaurentData:
    r = RationalParam(rvalue)
    center = 1j * math.pi * float(r)
    rho = laurent_radius(a, b, r)
    circle = Circle(0j, rho)
    degrees = np.arange(0, 2 * kmax + 2)
    B = even_part(a, b, center)
    coeffs = cauchy_coefficients(B, circle, degrees)
    fmax = float(np.max(np.abs(B(rho * np.exp(2j * np.pi * np.arange(64) / 64)))))
    odd = coeffs[1::2] * rho ** degrees[1::2].astype(float) / fmax
    gammas = tuple(complex(math.factorial(2 * k) * coeffs[2 * k]) for k in range(kmax + 1))
    residue = None
    if r.is_pole(a, b):
        residue = complex(cauchy_coefficients(lambda w: tau_array(a, b, center + w), circle, [-1])[0])
    return LaurentData(center=center, gammas=gammas, residue=residue,
                       radius=rho, odd_leakage=float(np.max(np.abs(odd))))


def laurent_coeffs(a: int, b: int, r, kmax: int) -> LaurentData:
    """gamma_{a,b,r}(k) for k = 0..kmax from circle integrals of the even part.

    ``gammas[k]`` is (2k)! times the degree-2k Taylor coefficient of
    B(w) = (tau(pi r i + w) + tau(pi r i - w)) / 2.  When pi*r*i is a pole of
    tau the residue there is computed by a separate circle integral.
    """
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    r = RationalParam.coerce(r, a * b)
    return _laurent_cached(a, b, r.value, r.exact, kmax)


def eta_coeffs(a: int, b: int, kmax: int) -> list:
    """eta_{a,b}(k) for k = 1..kmax: the 2k-th derivative of z*tau(z) at 0."""
    rho = LAURENT_RADIUS * math.pi / (a * b)
    degrees = np.arange(1, 2 * kmax, 2)
    coeffs = cauchy_coefficients(lambda w: tau_array(a, b, w), Circle(0j, rho), degrees)
    return [complex(math.factorial(2 * k) * coeffs[k - 1]) for k in range(1, kmax + 1)]


def eta_from_pi_i(a: int, b: int, kmax: int) -> list:
    """(2k-1)-st derivative of (-1)**(ab+a+b) tau at pi*i, for k = 1..kmax."""
    rho = LAURENT_RADIUS * math.pi / (a * b)
    sign = -1.0 if (a * b + a + b) % 2 else 1.0
    degrees = np.arange(1, 2 * kmax, 2)
    coeffs = cauchy_coefficients(lambda w: tau_array(a, b, 1j * math.pi + w), Circle(0j, rho), degrees)
    return [complex(sign * math.factorial(2 * k - 1) * coeffs[k - 1]) for k in range(1, kmax + 1)]


# -- expansions --------------------------------------------------------------

@dataclass(frozen=True)
class OscillatoryTerm:
    j: int
    amplitude: float
    phase: complex
    value: complex


@dataclass(frozen=True)
class AsymptoticResult:
    total: complex
    series_part: complex
    constant_growth_part: complex
    oscillatory_terms: tuple = field(default_factory=tuple)
    error_estimate: float = 0.0
    case: str = ""

    def conjugate(self) -> "AsymptoticResult":
        return AsymptoticResult(
            total=self.total.conjugate(),
            series_part=self.series_part.conjugate(),
            constant_growth_part=self.constant_growth_part.conjugate(),
            oscillatory_terms=tuple(
                OscillatoryTerm(t.j, t.amplitude, t.phase.conjugate(), t.value.conjugate())
                for t in self.oscillatory_terms),
            error_estimate=self.error_estimate,
            case=self.case,
        )


def _assemble(series, constant, terms, err, case) -> AsymptoticResult:
    total = series + constant + sum((t.value for t in terms), 0j)
    return AsymptoticResult(complex(total), complex(series), complex(constant),
                            tuple(terms), float(err), case)


def _prefactor(a: int, b: int, r: float, N: int) -> complex:
    ab = a * b
    return cmath.exp((ab - a / b - b / a) * math.pi * r * 1j / (2 * N)) / math.sin(math.pi * r)


def _series(a: int, b: int, r: RationalParam, N: int, kmax: int):
    """(1/2i) * sum_k gamma(k)/k! * (pi r i/(2abN))**k and the first omitted term."""
    ld = laurent_coeffs(a, b, r, kmax + 1)
    x = math.pi * float(r) * 1j / (2 * a * b * N)
    terms = [ld.gammas[k] / math.factorial(k) * x ** k for k in range(kmax + 2)]
    s = math.fsum(t.real for t in terms[:-1]) + 1j * math.fsum(t.imag for t in terms[:-1])
    return s / 2j, abs(terms[-1]) / 2


def _residue_terms(a: int, b: int, r: RationalParam, N: int, jmax: int, pref: complex) -> list:
    ab = a * b
    rv = r.value
    rf = float(rv)
    amp = math.sqrt(ab * N) / (2 * math.sqrt(2 * rf)) * cmath.exp(-1j * math.pi / 4)
    out = []
    for j in range(1, jmax + 1):
        sign = -1.0 if (N * j + j + 1) % 2 else 1.0
        R = amplitude_R(a, b, j)
        # exp(-i N a b r pi/2) * CS(j)**(-N/r), reduced exactly when r is rational
        phase = _exp_i_pi(-N * (ab * rv / 2 + Fraction(j * j, 2 * ab) / rv)
                          if r.exact else -N * (ab * rf / 2 + j * j / (2 * ab * rf)))
        out.append(OscillatoryTerm(j, R, phase, pref * amp * sign * R * phase))
    return out


def _check_r(r: RationalParam):
    if r.is_integer:
        raise WrongCaseError("r must not be an integer")


def expansion_in_P(a: int, b: int, r, N: int, kmax: int) -> AsymptoticResult:
    """Expansion of J_N when pi*r*i is not a pole of tau (series + floor(abr) residue terms)."""
    r = RationalParam.coerce(r, a * b)
    _check_r(r)
    if float(r) < 0:
        return expansion_in_P(a, b, -r, N, kmax).conjugate()
    if r.is_pole(a, b):
        raise WrongCaseError("pi*r*i is a pole; use expansion_not_in_P")
    pref = _prefactor(a, b, float(r), N)
    series, err = _series(a, b, r, N, kmax)
    terms = _residue_terms(a, b, r, N, r.floor_abr(a, b), pref)
    return _assemble(pref * series, 0j, terms, abs(pref) * err, "in_P")


def expansion_not_in_P(a: int, b: int, r, N: int, kmax: int) -> AsymptoticResult:
    """Expansion of J_N when pi*r*i is a pole: adds the -sqrt(N) centre term."""
    r = RationalParam.coerce(r, a * b)
    _check_r(r)
    if float(r) < 0:
        return expansion_not_in_P(a, b, -r, N, kmax).conjugate()
    k = r.pole_index(a, b)
    if k is None:
        raise WrongCaseError("pi*r*i is not a pole; use expansion_in_P")
    ab = a * b
    pref = _prefactor(a, b, float(r), N)
    series, err = _series(a, b, r, N, kmax)
    sign = -1.0 if k % 2 else 1.0
    centre = (-math.sqrt(N) / (math.sqrt(2 * ab * float(r))) * cmath.exp(-1j * math.pi / 4)
              * sign * _sin_pi(a * r.value) * _sin_pi(b * r.value))
    terms = _residue_terms(a, b, r, N, k - 1, pref)
    return _assemble(pref * series, pref * centre, terms, abs(pref) * err, "not_in_P")


def expansion(a: int, b: int, r, N: int, kmax: int) -> AsymptoticResult:
    """Dispatch to the right case, including r = 1."""
    r = RationalParam.coerce(r, a * b)
    if r.is_integer:
        if r.value == 1:
            return kashaev_tirkkonen_r1(a, b, N, kmax)
        if r.value == -1:
            return kashaev_tirkkonen_r1(a, b, N, kmax).conjugate()
        raise WrongCaseError("integer r other than +-1 is not covered")
    if r.is_pole(a, b):
        return expansion_not_in_P(a, b, r, N, kmax)
    return expansion_in_P(a, b, r, N, kmax)


def kashaev_tirkkonen_r1(a: int, b: int, N: int, kmax: int) -> AsymptoticResult:
    """Expansion of J_N(T(a,b); exp(2 pi i/N)) with its N**1.5 residue sum."""
    ab = a * b
    pref = cmath.exp((ab - a / b - b / a) * math.pi * 1j / (2 * N))
    etas = eta_coeffs(a, b, kmax + 2)
    x = math.pi * 1j / (2 * ab * N)
    terms = [etas[k] / math.factorial(k + 1) * x ** k for k in range(kmax + 2)]
    series = (math.fsum(t.real for t in terms[:-1]) + 1j * math.fsum(t.imag for t in terms[:-1])) / 4
    err = abs(terms[-1]) / 4
    amp = N ** 1.5 * cmath.exp(1j * math.pi / 4) / (4 * math.sqrt(2 * ab))
    out = []
    for j in range(1, ab):
        sign = -1.0 if ((N - 1) * j) % 2 else 1.0
        R = amplitude_R(a, b, j)
        phase = _exp_i_pi(-Fraction(N * ab, 2) - Fraction(N * j * j, 2 * ab))
        out.append(OscillatoryTerm(j, R, phase, pref * amp * sign * j * j * R * phase))
    return _assemble(pref * series, 0j, out, err, "r1")
