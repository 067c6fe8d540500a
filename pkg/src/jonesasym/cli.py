"""Command-line interface: eval, asympt, classify, sweep and verify.

Exit codes: 0 success, 1 failed verification, 2 malformed input (bad knot
expression, number, range or grid), 3 numeric-domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import verify as verify_mod
from .fig8 import FIG8_GROWTH_CONSTANT
from .jones import DomainError, EvalPoint, jones_eval
from .knots import (ConnectedSum, FigureEight, KnotError, KnotParseError, Mirror, Torus, alexander_at,
                    canonical_parts, format_knot, parse_knot)
from .quadrature import PoleOnContourError
from .regime import RegimeKind, classify_regime
from .torus import WrongCaseError, expansion

CLI_SNAP_TOL = 1e-4
EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 1, 2, 3


class InputError(ValueError):
    """Malformed command-line value."""


def _parse_complex(text: str) -> complex:
    """Accept ``<re>+<im>i``, ``<re>-<im>i`` or a plain real number."""
    s = text.strip().replace(" ", "")
    if not s:
        raise InputError("empty complex number")
    try:
        return complex(s[:-1] + "j") if s.endswith("i") else complex(float(s))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def _parse_rational(text: str) -> Fraction:
    if "/" not in text:
        raise InputError(f"r must be given as p/q, got {text!r}")
    try:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse rational {text!r}") from None


def _cnum(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def _workers() -> int:
    raw = os.environ.get("JONESASYM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _ordered_map(fn, items) -> list:
    """Map in parallel, returning results in input order."""
    items = list(items)
    workers = min(_workers(), max(len(items), 1))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- eval --------------------------------------------------------------------

def cmd_eval(args) -> int:
    knot = parse_knot(args.knot)
    c = _parse_complex(args.c)
    res = jones_eval(knot, EvalPoint(c, args.N), args.method)
    out = {"knot": format_knot(knot), "value": _cnum(res.value), "method": res.method.value,
           "N": res.N, "c": _cnum(c)}
    if res.log_domain:
        out["log_value"] = _cnum(res.log())
    if res.precision:
        out["digits"] = res.precision
    _emit_json(out)
    return 0


# -- asympt ------------------------------------------------------------------

def cmd_asympt(args) -> int:
    Torus(args.a, args.b)
    r = _parse_rational(args.r)
    res = expansion(args.a, args.b, r, args.N, args.kmax)
    direct = jones_eval(Torus(args.a, args.b), EvalPoint(2j * math.pi * float(r), args.N)).value
    _emit_json({
        "a": args.a, "b": args.b, "r": str(r), "N": args.N, "kmax": args.kmax,
        "case": res.case,
        "total": _cnum(res.total),
        "series_part": _cnum(res.series_part),
        "constant_growth_part": _cnum(res.constant_growth_part),
        "oscillatory_terms": [{"j": t.j, "amplitude": t.amplitude, "phase": _cnum(t.phase),
                               "value": _cnum(t.value)} for t in res.oscillatory_terms],
        "error_estimate": res.error_estimate,
        "direct": _cnum(direct),
        "relative_difference": abs(res.total - direct) / abs(direct),
    })
    return 0


# -- classify ----------------------------------------------------------------

def _grid_axis(lo: str, hi: str, step: str) -> list:
    try:
        flo, fhi, fst = Fraction(lo), Fraction(hi), Fraction(step)
    except (ValueError, ZeroDivisionError):
        raise InputError("grid bounds must be decimal numbers") from None
    if fst <= 0 or fhi < flo:
        raise InputError("grid needs step > 0 and max >= min")
    count = math.floor((fhi - flo) / fst) + 1
    return [float(flo + i * fst) for i in range(count)]


def _regime_json(reg, c: complex) -> dict:
    out = {"c": _cnum(c), "regime": reg.kind.value}
    if reg.exponent is not None:
        out["exponent"] = str(reg.exponent)
    if reg.rate is not None:
        out["rate"] = _cnum(reg.rate)
    if reg.snapped_to is not None and reg.snapped_to != c:
        out["snapped_to"] = _cnum(reg.snapped_to)
    return out


def cmd_classify(args) -> int:
    knot = parse_knot(args.knot)
    if args.c is not None:
        c = _parse_complex(args.c)
        _emit_json({"knot": format_knot(knot), **_regime_json(classify_regime(knot, c, args.tol), c)})
        return 0
    if None in (args.re_min, args.re_max, args.im_min, args.im_max):
        raise InputError("classify needs --c or a full grid (--re-min/--re-max/--im-min/--im-max)")
    res = _grid_axis(args.re_min, args.re_max, args.re_step or args.step)
    ims = _grid_axis(args.im_min, args.im_max, args.im_step or args.step)
    cells = [complex(x, y) for y in ims for x in res]
    regimes = _ordered_map(lambda c: classify_regime(knot, c, args.tol), cells)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["c_re", "c_im", "regime", "exponent_or_rate"])
    for c, reg in zip(cells, regimes):
        w.writerow([repr(c.real), repr(c.imag), reg.kind.value, reg.detail()])
    return 0


# -- sweep -------------------------------------------------------------------

def _leaf_prediction(leaf, c: complex):
    """Leading large-N term of J_N(leaf; exp(c/N)) as a function of N, or None."""
    reg = classify_regime(leaf, c, CLI_SNAP_TOL)
    if reg.kind is RegimeKind.DEGENERATE:
        return lambda N: 1.0
    if reg.kind is RegimeKind.CONVERGES:
        limit = 1 / alexander_at(leaf, c)
        return lambda N: limit
    if reg.kind is not RegimeKind.POLYNOMIAL:
        return None
    if isinstance(leaf, FigureEight):
        return lambda N: FIG8_GROWTH_CONSTANT * N ** (2 / 3)
    if reg.exponent == Fraction(1, 2):
        a, b = leaf.a, leaf.b
        const = (math.sin(math.pi / a) * math.sin(math.pi / b)
                 / (math.sqrt(2) * math.sin(math.pi / (a * b)))) * complex(math.cos(math.pi / 4),
                                                                          -math.sin(math.pi / 4))
        if reg.snapped_to.imag < 0:
            const = const.conjugate()
        return lambda N: const * math.sqrt(N)
    return None


def _prediction(knot, c: complex):
    if isinstance(knot, Mirror):
        return _prediction(knot.inner, -c)
    if isinstance(knot, ConnectedSum):
        fns = [_prediction(p, c) for p in canonical_parts(knot)]
        if any(f is None for f in fns):
            return None
        return lambda N: math.prod((f(N) for f in fns), start=1)
    return _leaf_prediction(knot, c)


def _n_values(args) -> list:
    if args.N_list:
        try:
            ns = sorted({int(x) for x in args.N_list.split(",")})
        except ValueError:
            raise InputError("--N-list must be comma-separated integers") from None
    else:
        try:
            lo, hi, count = (int(x) for x in args.N_range.split(":"))
        except ValueError:
            raise InputError("--N-range must be lo:hi:count") from None
        if not (2 <= lo <= hi) or count < 1:
            raise InputError("--N-range needs 2 <= lo <= hi and count >= 1")
        ns = sorted({int(round(x)) for x in np.geomspace(lo, hi, count)})
    if not ns or ns[0] < 2:
        raise InputError("N values must be >= 2")
    return ns


def cmd_sweep(args) -> int:
    knot = parse_knot(args.knot)
    c = _parse_complex(args.c)
    ns = _n_values(args)
    values = _ordered_map(lambda n: jones_eval(knot, EvalPoint(c, n)), ns)
    pred = _prediction(knot, c)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["N", "re", "im", "abs", "arg", "ratio_to_prediction"])
    for n, v in zip(ns, values):
        z = v.value
        ratio = ""
        if pred is not None:
            p = pred(n)
            if v.log_domain:
                ratio = repr(math.exp((v.log() - complex(np.log(complex(p)))).real))
            else:
                ratio = repr(abs(z / p))
        w.writerow([n, repr(z.real), repr(z.imag), repr(abs(z)),
                    repr(math.atan2(z.imag, z.real)), ratio])
    return 0


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    names = [n for n in args.only.split(",") if n] if args.only else None
    try:
        results = verify_mod.run(names, quick=not args.full)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    _emit_json({"profile": "full" if args.full else "quick", "pass": ok,
                "results": [r.to_json() for r in results]})
    return 0 if ok else EXIT_FAIL


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jonesasym",
                                description="Colored Jones polynomials J_N(K; exp(c/N)) and their growth.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate J_N at one point")
    e.add_argument("--knot", required=True)
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--c", required=True, help="exponent parameter, e.g. 0+1.047i")
    e.add_argument("--method", choices=["auto", "sum", "contour"], default="auto")
    e.set_defaults(func=cmd_eval)

    a = sub.add_parser("asympt", help="torus-knot asymptotic expansion at r = p/q")
    a.add_argument("--a", type=int, required=True)
    a.add_argument("--b", type=int, required=True)
    a.add_argument("--r", required=True, help="rational p/q")
    a.add_argument("--N", type=int, required=True)
    a.add_argument("--kmax", type=int, default=8)
    a.set_defaults(func=cmd_asympt)

    c = sub.add_parser("classify", help="growth regime at c or over a grid (CSV)")
    c.add_argument("--knot", required=True)
    c.add_argument("--c")
    c.add_argument("--re-min")
    c.add_argument("--re-max")
    c.add_argument("--im-min")
    c.add_argument("--im-max")
    c.add_argument("--step", default="0.1")
    c.add_argument("--re-step")
    c.add_argument("--im-step")
    c.add_argument("--tol", type=float, default=CLI_SNAP_TOL,
                   help="snap distance to special points (default 1e-4)")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", help="J_N over a range of N at fixed c (CSV)")
    s.add_argument("--knot", required=True)
    s.add_argument("--c", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--N-list", dest="N_list")
    g.add_argument("--N-range", dest="N_range", help="lo:hi:count, geometric")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the acceptance checks")
    prof = v.add_mutually_exclusive_group()
    prof.add_argument("--quick", action="store_true", help="reduced N (default)")
    prof.add_argument("--full", action="store_true")
    v.add_argument("--only", help="comma-separated criterion names")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KnotParseError, KnotError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, WrongCaseError, PoleOnContourError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
