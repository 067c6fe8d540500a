"""Error of the truncated torus expansion against the exact sum, as N and kmax vary.

Errors are measured at 50 significant digits so that the decay is visible
below double-precision rounding.

    python scripts/expansion_error_scaling.py --a 2 --b 3 --r 1/4
"""

import argparse
import csv
import math
import sys
from fractions import Fraction

from jonesasym.highprec import expansion_in_P_mp, torus_sum_mp


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--r", default="1/4")
    ap.add_argument("--kmax", default="2,4,6,8")
    ap.add_argument("--N", default="100,200,400,800")
    args = ap.parse_args()
    r = Fraction(args.r)
    ns = [int(x) for x in args.N.split(",")]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kmax", "N", "rel_err", "log10_rel_err"])
    refs = {n: torus_sum_mp(args.a, args.b, r, n) for n in ns}
    for k in (int(x) for x in args.kmax.split(",")):
        for n in ns:
            err = float(abs(expansion_in_P_mp(args.a, args.b, r, n, k) - refs[n]) / abs(refs[n]))
            w.writerow([k, n, repr(err), f"{math.log10(err):.3f}"])


if __name__ == "__main__":
    main()
