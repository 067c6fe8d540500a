"""Colored Jones polynomials J_N(K; exp(c/N)) of figure-eight and torus knots and their large-N growth."""

from .jones import DomainError, EvalPoint, JonesValue, Method, jones_eval, jones_fig8, jones_torus_contour, jones_torus_sum
from .knots import (ConnectedSum, FigureEight, KnotError, KnotParseError, LogZero, Mirror, Torus, XI,
                    alexander_at, alexander_eval, format_knot, log_zeros, min_log_zero, parse_knot)
from .regime import Regime, RegimeKind, classify_regime
from .torus import (AsymptoticResult, LaurentData, PoleHit, RationalParam, expansion, expansion_in_P,
                    expansion_not_in_P, kashaev_tirkkonen_r1, laurent_coeffs, tau_eval)

__all__ = [
    "AsymptoticResult", "ConnectedSum", "DomainError", "EvalPoint", "FigureEight", "JonesValue",
    "KnotError", "KnotParseError", "LaurentData", "LogZero", "Method", "Mirror", "PoleHit",
    "RationalParam", "Regime", "RegimeKind", "Torus", "XI", "alexander_at", "alexander_eval",
    "classify_regime", "expansion", "expansion_in_P", "expansion_not_in_P", "format_knot",
    "jones_eval", "jones_fig8", "jones_torus_contour", "jones_torus_sum", "kashaev_tirkkonen_r1",
    "laurent_coeffs", "log_zeros", "min_log_zero", "parse_knot", "tau_eval",
]
