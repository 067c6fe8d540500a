"""Leading-order asymptotics of J_N(E; exp(xi/N)) as executable checks.

At c = xi every Habiro factor is f(j/N) with f(x) = 3 - 2 cosh(xi x), so
J_N = sum_k prod_{j<=k} f(j/N).  The functions here check the truncation
and Riemann-sum inequalities that reduce this sum to an integral, and the
degenerate Laplace estimate that turns the integral into Gamma(1/3) N^{-1/3}.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from .jones import EvalPoint, jones_fig8
from .knots import XI
from .quadrature import QuadratureError

FIG8_GROWTH_CONSTANT = math.gamma(1 / 3) / (3 * XI) ** (2 / 3)
INNER_ABS_TOL = 1e-12
OUTER_REL_TOL = 1e-10


def f_fig8(x):
    """f(x) = 3 - 2 cosh(xi x); decreasing from f(0) = 1 to f(1) = 0."""
    return 3 - 2 * np.cosh(XI * np.asarray(x)) if np.ndim(x) else 3 - 2 * math.cosh(XI * x)


def _floor_times(eps: float, N: int) -> int:
    # exact decimal value of eps, so 0.29 * 100 floors to 29
    return math.floor(Fraction(repr(float(eps))) * N)


def _log_partial_products(N: int) -> np.ndarray:
    """log prod_{j=1}^{k} f(j/N) for k = 0..N-1."""
    j = np.arange(1, N)
    return np.concatenate([[0.0], np.cumsum(np.log(f_fig8(j / N)))])


def _logsumexp(x: np.ndarray) -> float:
    if x.size == 0:
        return -math.inf
    top = float(np.max(x))
    return top + math.log(math.fsum(np.exp(x - top)))


@dataclass(frozen=True)
class TailReport:
    N: int
    eps: float
    eps2: float
    cutoff: int
    s_full: float
    s_trunc: float
    log_difference: float  # -inf when the tail is empty
    log_bound: float
    passed: bool

    @property
    def difference(self) -> float:
        return math.exp(self.log_difference)

    @property
    def bound(self) -> float:
        return math.exp(self.log_bound)


def tail_bound_check(N: int, eps: float, eps2: float) -> TailReport:
    """Check 0 <= S_full - S_trunc < N f(eps2)^((eps - eps2) N - 1).

    S_trunc keeps the terms k <= floor(eps N).  Both sides are compared in
    log form because the bound underflows for moderate N.  The difference is
    required to be strictly positive whenever the dropped tail is nonempty.
    """
    if not (0 < eps2 < eps < 1):
        raise ValueError("need 0 < eps2 < eps < 1")
    if N < 2:
        raise ValueError("need N >= 2")
    logs = _log_partial_products(N)
    cutoff = _floor_times(eps, N)
    head, tail = logs[:cutoff + 1], logs[cutoff + 1:]
    log_diff = _logsumexp(tail)
    log_bound = math.log(N) + ((eps - eps2) * N - 1) * math.log(f_fig8(eps2))
    s_trunc = math.fsum(np.exp(head))
    s_full = s_trunc + (math.exp(log_diff) if tail.size else 0.0)
    positive = tail.size == 0 or log_diff > -math.inf
    return TailReport(N, eps, eps2, cutoff, s_full, s_trunc, log_diff, log_bound,
                      bool(positive and log_diff < log_bound))


def h_fig8(y: float) -> float:
    """h(y) = integral_0^y log f(x) dx."""
    if y == 0:
        return 0.0
    val, err = integrate.quad(lambda x: math.log(f_fig8(x)), 0.0, y,
                              epsabs=INNER_ABS_TOL, epsrel=0, limit=200)
    if err > INNER_ABS_TOL * 10:
        raise QuadratureError(f"inner integral at y={y} not converged (err {err:.2e})")
    return val


def laplace_integral(N: int, eps: float) -> float:
    """I(N, eps) = integral_0^eps exp(N h(y)) dy by nested adaptive quadrature."""
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    width = min(eps, 4 * N ** (-1 / 3))
    pts = [width] if width < eps else None
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(lambda y: math.exp(N * h_fig8(y)), 0.0, eps,
                                      epsabs=0, epsrel=OUTER_REL_TOL, limit=200, points=pts)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(str(exc)) from None
    if err > 10 * OUTER_REL_TOL * abs(val):
        raise QuadratureError(f"outer integral not converged (err {err:.2e})")
    return val


@dataclass(frozen=True)
class SandwichReport:
    N: int
    eps: float
    lower: float   # f(eps) * I
    middle: float  # S_trunc / N
    upper: float   # I + 1/N
    integral: float
    passed: bool


def riemann_sandwich(N: int, eps: float) -> SandwichReport:
    """Check f(eps) I < S_trunc/N < I + 1/N with I = I(N, eps).

    A quadrature that misses its tolerance raises QuadratureError; an
    inequality that fails is reported through ``passed``.
    """
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    integral = laplace_integral(N, eps)
    logs = _log_partial_products(N)[:_floor_times(eps, N) + 1]
    middle = math.fsum(np.exp(logs)) / N
    lower = float(f_fig8(eps)) * integral
    upper = integral + 1 / N
    return SandwichReport(N, eps, lower, middle, upper, integral,
                          bool(lower < middle < upper))


@dataclass(frozen=True)
class LaplaceProblem:
    """integral_alpha^beta g(t) exp(N h(t)) dt with a cubic-order maximum at alpha.

    ``dh`` is h'; when omitted it is estimated by central differences.
    """
    h: Callable[[float], float]
    g: Callable[[float], complex]
    alpha: float
    beta: float
    h3: float
    dh: Callable[[float], float] | None = None

    def derivative(self, t: float) -> float:
        if self.dh is not None:
            return self.dh(t)
        step = 1e-5 * max(1.0, abs(t))
        return (self.h(t + step) - self.h(t - step)) / (2 * step)

    def validate(self, grid: int = 200, tol: float = 1e-8) -> None:
        """Raise ValueError unless h'(alpha) = h''(alpha) = 0, h3 < 0 and h' < 0 after alpha."""
        if not self.beta > self.alpha:
            raise ValueError("need beta > alpha")
        if not self.h3 < 0:
            raise ValueError("h3 must be negative")
        d0 = self.derivative(self.alpha)
        if abs(d0) > tol:
            raise ValueError(f"h'(alpha) = {d0} is not zero")
        step = 1e-4
        d2 = (self.derivative(self.alpha + step) - self.derivative(self.alpha)) / step
        # h'' at alpha vanishes while h''' = h3, so the forward difference is ~ h3*step/2
        if abs(d2 - self.h3 * step / 2) > 10 * step * abs(self.h3):
            raise ValueError(f"h''(alpha) ~ {d2} is not zero")
        for t in np.linspace(self.alpha, self.beta, grid + 1)[1:]:
            if not self.derivative(float(t)) < 0:
                raise ValueError(f"h' is not negative at t={t}")


def laplace_leading(p: LaplaceProblem, N: int) -> complex:
    """g(alpha) Gamma(1/3) (-2/(9 h3 N))^(1/3) exp(N h(alpha))."""
    p.validate()
    return complex(p.g(p.alpha) * math.gamma(1 / 3) * (-2 / (9 * p.h3 * N)) ** (1 / 3)
                   * math.exp(N * p.h(p.alpha)))


def fig8_laplace_problem(eps: float = 0.5) -> LaplaceProblem:
    """h(y) = integral_0^y log f, g = 1 on [0, eps]; h'''(0) = -2 xi^2."""
    return LaplaceProblem(h=h_fig8, g=lambda t: 1.0, alpha=0.0, beta=eps,
                          h3=-2 * XI * XI, dh=lambda t: math.log(f_fig8(t)))


def laplace_ratio(N: int, eps: float) -> float:
    """I(N, eps) divided by its Laplace leading term."""
    return laplace_integral(N, eps) / laplace_leading(fig8_laplace_problem(eps), N).real


def fig8_growth_ratio(N: int) -> float:
    """J_N(E; exp(xi/N)) / (Gamma(1/3) (3 xi)^(-2/3) N^(2/3))."""
    value = jones_fig8(EvalPoint(XI, N)).value
    return value.real / (FIG8_GROWTH_CONSTANT * N ** (2 / 3))
