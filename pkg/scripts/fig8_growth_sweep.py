"""Ratio of J_N(E; exp(xi/N)) to Gamma(1/3) (3 xi)^(-2/3) N^(2/3) over a geometric N range.

    python scripts/fig8_growth_sweep.py --n-max 1000000 --points 13
"""

import argparse
import csv
import sys

import numpy as np

from jonesasym.fig8 import fig8_growth_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=10)
    ap.add_argument("--n-max", type=int, default=100_000)
    ap.add_argument("--points", type=int, default=11)
    args = ap.parse_args()
    ns = sorted({int(round(x)) for x in np.geomspace(args.n_min, args.n_max, args.points)})
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["N", "ratio", "ratio_minus_1"])
    for n in ns:
        r = fig8_growth_ratio(n)
        w.writerow([n, repr(r), repr(r - 1)])


if __name__ == "__main__":
    main()
