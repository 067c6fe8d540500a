"""Regime map of T(a,b) over a c-grid, with an empirical large-N witness per cell.

For each cell the classifier label is printed next to |J_N - 1/Delta| at two
values of N (convergent cells should shrink) and log|J_N|/N (exponential
cells should approach Re of the predicted rate).

    python scripts/convergence_grid.py --a 2 --b 3 --step 0.5
"""

import argparse
import csv
import sys

from jonesasym.jones import EvalPoint, jones_torus_sum
from jonesasym.knots import Torus, alexander_at
from jonesasym.regime import RegimeKind, classify_regime


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--extent", type=float, default=2.0)
    ap.add_argument("--step", type=float, default=0.5)
    ap.add_argument("--n1", type=int, default=200)
    ap.add_argument("--n2", type=int, default=800)
    args = ap.parse_args()
    knot = Torus(args.a, args.b)
    count = int(round(2 * args.extent / args.step)) + 1
    axis = [-args.extent + i * args.step for i in range(count)]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["c_re", "c_im", "regime", "err_n1", "err_n2", "log_abs_over_n2", "predicted_re_rate"])
    for y in axis:
        for x in axis:
            c = complex(x, y)
            reg = classify_regime(knot, c)
            row = [repr(x), repr(y), reg.kind.value, "", "", "", ""]
            if reg.kind is RegimeKind.CONVERGES:
                target = 1 / alexander_at(knot, c)
                row[3] = repr(abs(jones_torus_sum(EvalPoint(c, args.n1), args.a, args.b).value - target))
                row[4] = repr(abs(jones_torus_sum(EvalPoint(c, args.n2), args.a, args.b).value - target))
            elif reg.kind is RegimeKind.EXPONENTIAL:
                v = jones_torus_sum(EvalPoint(c, args.n2), args.a, args.b)
                row[5] = repr(v.log().real / args.n2)
                row[6] = repr(reg.rate.real)
            w.writerow(row)
            sys.stdout.flush()


if __name__ == "__main__":
    main()
