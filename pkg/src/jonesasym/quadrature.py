"""Contour quadrature in the complex plane.

Three contour shapes are supported: straight lines through a basepoint at a
fixed angle, the same lines with a semicircular detour around one point, and
circles.  Lines are integrated with composite Gauss-Legendre panels and
truncated by a caller-supplied Gaussian envelope; circles use the
trapezoidal rule, which converges geometrically for analytic integrands.

Integrands must accept numpy arrays of complex points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

ENVELOPE_CUTOFF = 1e-18
LINE_RTOL = 1e-11
CIRCLE_RTOL = 1e-12
MAX_CIRCLE_NODES = 2 ** 16
MAX_PANELS = 2 ** 12
GL_ORDER = 20


class QuadratureError(RuntimeError):
    """Integration failed to reach its tolerance."""


class EnvelopeError(QuadratureError):
    """Integrand is not small where the envelope says it should be."""


class PoleOnContourError(ValueError):
    """A requested contour passes through (or too near) a pole."""


@dataclass(frozen=True)
class RotatedLine:
    angle: float
    basepoint: complex = 0j

    def point(self, t):
        return self.basepoint + np.asarray(t) * np.exp(1j * self.angle)

    @property
    def direction(self) -> complex:
        return complex(np.exp(1j * self.angle))

    def closest(self, p: complex):
        """Parameter of the closest point to ``p`` and the distance."""
        d = (p - self.basepoint) * np.conj(self.direction)
        return d.real, abs(d.imag)


@dataclass(frozen=True)
class DetourLine:
    angle: float
    basepoint: complex
    detour_center: complex
    detour_radius: float
    below: bool = True

    @property
    def line(self) -> RotatedLine:
        return RotatedLine(self.angle, self.basepoint)


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    orientation: int = 1


@lru_cache(maxsize=8)
def _gauss_legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def _panel_integral(fn, line: RotatedLine, breaks: np.ndarray) -> complex:
    x, w = _gauss_legendre(GL_ORDER)
    lo, hi = breaks[:-1, None], breaks[1:, None]
    half = (hi - lo) / 2
    t = (lo + hi) / 2 + half * x[None, :]
    vals = fn(line.point(t))
    return complex(np.sum(vals * w[None, :] * half) * line.direction)


def _graded_breaks(t0: float, t1: float, n: int, refine) -> np.ndarray:
    """Uniform breakpoints plus geometric grading towards near-singular points."""
    pts = [np.linspace(t0, t1, n + 1)]
    width = (t1 - t0) / n
    for tc, dist in refine:
        if dist <= 0 or dist >= width:
            continue
        levels = int(math.ceil(math.log2(width / dist))) + 2
        offs = dist * 2.0 ** np.arange(-1, levels)
        cand = np.concatenate([tc - offs, tc + offs, [tc]])
        pts.append(cand[(cand > t0) & (cand < t1)])
    return np.unique(np.concatenate(pts))


def integrate_gaussian_line(integrand, contour: RotatedLine, decay_scale: float,
                            fold: bool = False, singularities=()) -> complex:
    """Integrate along ``basepoint + t*exp(i*angle)`` for t over the real line.

    ``decay_scale`` is the width sigma of an envelope ``exp(-(t/sigma)**2)``
    bounding ``|integrand|``; the line is cut where the envelope drops below
    1e-18.  With ``fold=True`` the integrand must be even in t and only the
    half-line t >= 0 is integrated (and doubled).  ``singularities`` are
    off-contour points whose proximity calls for graded panels.
    """
    tmax = decay_scale * math.sqrt(-math.log(ENVELOPE_CUTOFF))
    t0 = 0.0 if fold else -tmax
    refine = [contour.closest(s) for s in singularities]

    peak = np.max(np.abs(integrand(contour.point(np.linspace(t0, tmax, 257)))))
    tail = np.abs(integrand(contour.point(np.array([t0, tmax]) if not fold else np.array([tmax]))))
    if not np.all(np.isfinite(tail)) or np.max(tail) > 1e-14 * max(peak, 1e-300):
        raise EnvelopeError("integrand does not decay within the supplied envelope")

    n = 8
    prev = None
    while n <= MAX_PANELS:
        val = _panel_integral(integrand, contour, _graded_breaks(t0, tmax, n, refine))
        if fold:
            val *= 2
        if prev is not None and abs(val - prev) <= LINE_RTOL * max(abs(val), 1e-300):
            return val
        prev = val
        n *= 2
    raise QuadratureError("line integral did not converge")


def _arc_integral(fn, center: complex, radius: float, th0: float, th1: float, n: int) -> complex:
    x, w = _gauss_legendre(GL_ORDER)
    breaks = np.linspace(th0, th1, n + 1)
    lo, hi = breaks[:-1, None], breaks[1:, None]
    half = (hi - lo) / 2
    th = (lo + hi) / 2 + half * x[None, :]
    z = center + radius * np.exp(1j * th)
    vals = fn(z) * 1j * (z - center)
    return complex(np.sum(vals * w[None, :] * half))


def integrate_detour_line(integrand, contour: DetourLine, decay_scale: float,
                          singularities=()) -> complex:
    """Like :func:`integrate_gaussian_line` but with a semicircular detour.

    The detour leaves the line at distance ``detour_radius`` before
    ``detour_center`` and rejoins it after, passing to the right of the
    direction of travel when ``below`` is set and to the left otherwise.
    """
    line = contour.line
    tc, off = line.closest(contour.detour_center)
    if off > 1e-12 * max(1.0, abs(contour.detour_center)):
        raise ValueError("detour center must lie on the line")
    rho = contour.detour_radius
    tmax = decay_scale * math.sqrt(-math.log(ENVELOPE_CUTOFF))
    refine = [line.closest(s) for s in singularities]
    phi = contour.angle
    th0, th1 = (phi - math.pi, phi) if contour.below else (phi + math.pi, phi)
    if th0 > th1:
        # travelling clockwise: integrate the reversed arc and negate
        arc_sign, th0, th1 = -1.0, th1, th0
    else:
        arc_sign = 1.0

    n = 8
    prev = None
    while n <= MAX_PANELS:
        left = _panel_integral(integrand, line, _graded_breaks(tc - tmax, tc - rho, n, refine))
        right = _panel_integral(integrand, line, _graded_breaks(tc + rho, tc + tmax, n, refine))
        arc = arc_sign * _arc_integral(integrand, contour.detour_center, rho, th0, th1, max(n // 4, 2))
        val = left + right + arc
        if prev is not None and abs(val - prev) <= LINE_RTOL * max(abs(val), 1e-300):
            return val
        prev = val
        n *= 2
    raise QuadratureError("detour integral did not converge")


def _circle_fft(fn, circle: Circle, m: int) -> tuple:
    half = m // 2
    theta = 2 * math.pi * np.arange(half) / m
    w = circle.radius * np.exp(1j * theta)
    # second half taken as exact negatives so even/odd structure is preserved
    nodes = np.concatenate([w, -w])
    vals = np.asarray(fn(circle.center + nodes), dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand not finite on circle")
    return np.fft.fft(vals) / m, float(np.max(np.abs(vals)))


def cauchy_coefficients(fn, circle: Circle, degrees) -> np.ndarray:
    """Laurent coefficients of ``fn`` about ``circle.center`` for several degrees.

    Coefficient n is (1/2 pi i) * contour integral of fn(w)/(w-center)**(n+1).
    Node count doubles from 32 until every coefficient changes by less than
    1e-12 of its size (or of the natural scale max|fn| / radius**n).
    """
    degrees = np.atleast_1d(np.asarray(degrees, dtype=int))
    rho = circle.radius
    m = 32
    prev = None
    while m <= MAX_CIRCLE_NODES:
        spectrum, fmax = _circle_fft(fn, circle, m)
        coeffs = spectrum[np.mod(degrees, m)] * rho ** (-degrees.astype(float))
        coeffs = coeffs * circle.orientation
        if prev is not None:
            scale = fmax * rho ** (-degrees.astype(float))
            diff = np.abs(coeffs - prev)
            if np.all((diff <= CIRCLE_RTOL * np.abs(coeffs)) | (diff <= 1e-14 * scale)):
                return coeffs
        prev = coeffs
        m *= 2
    raise QuadratureError("circle integral did not converge")


def cauchy_coefficient(fn, circle: Circle, degree: int) -> complex:
    """Single Laurent coefficient; degree -1 gives the residue."""
    return complex(cauchy_coefficients(fn, circle, [degree])[0])


def rotated_line_for_real_c(c: float, ab: int) -> RotatedLine:
    """Integration line for real ``c`` with 0 < |c| < 2 pi/(ab).

    For negative ``c`` the real axis is rotated by pi/4 + delta with
    |c| tan(angle) < 2 pi/(ab); for positive ``c`` the real axis itself
    is used.
    """
    limit = 2 * math.pi / ab
    if not (0 < abs(c) < limit):
        raise ValueError(f"need 0 < |c| < 2*pi/{ab}, got c={c}")
    if c > 0:
        line = RotatedLine(0.0)
    else:
        phi_max = math.atan(limit / abs(c))
        line = RotatedLine((math.pi / 4 + phi_max) / 2)
    # the shifted line through c/2 meets the imaginary axis at height
    # |c|/2 * tan(angle); poles of tau sit at k*pi/(ab)
    crossing = abs(c) / 2 * math.tan(line.angle)
    first_pole = math.pi / ab
    if crossing >= first_pole:
        raise PoleOnContourError("pole between the contour and its shift")
    return line
