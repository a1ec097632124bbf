#!/usr/bin/env python3
"""Trace the two-user distortion region for a binary broadcast setup.

Sweeps d1 over a grid, reports the smallest d2 the outer bound allows at each
point, and annotates the sweep with the closed-form floors so a plot needs no
second pass. Output is CSV on stdout; diagnostics go to stderr.

Example:
    python3 scripts/trace_region.py --rho 1.2 --delta1 0.08 --delta2 0.05 \
        --d1-min 0.05 --d1-max 0.30 --d1-step 0.005 > region.csv
"""

import argparse
import csv
import sys

from jsccbounds import binary_info as bi
from jsccbounds import bounds_core as bc
from jsccbounds import broadcast_region as br
from jsccbounds.binary_info import DomainError


def build_grid(lo, hi, step):
    out = []
    k = 0
    while True:
        v = lo + k * step
        if v > hi + 1e-12:
            break
        out.append(min(v, hi))
        k += 1
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rho", type=float, required=True)
    ap.add_argument("--delta1", type=float, required=True)
    ap.add_argument("--delta2", type=float, required=True)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--n", type=int, default=None,
                    help="blocklength for the finite-n correction; default asymptotic")
    ap.add_argument("--d1-min", type=float, required=True)
    ap.add_argument("--d1-max", type=float, required=True)
    ap.add_argument("--d1-step", type=float, required=True)
    args = ap.parse_args()

    if args.d1_step <= 0:
        ap.error("--d1-step must be positive")
    grid = build_grid(args.d1_min, args.d1_max, args.d1_step)
    if not grid:
        ap.error("empty d1 grid")

    bp = br.BinaryBroadcastParams(rho=args.rho, p=args.p, delta1=args.delta1,
                                  delta2=args.delta2, n=args.n)
    points = br.region_trace(bp, grid)

    # closed-form markers, asymptotic only
    floor = None
    d1_star = bc.d_asym(args.rho, args.delta1)
    if args.n is None and args.p == 0.5:
        try:
            floor = br.d2_floor(bp)
        except DomainError:
            floor = None

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["d1", "d2_min", "q_star", "slack", "feasible"])
    for pt in points:
        w.writerow(["%.12g" % pt.d1, "%.12g" % pt.d2_min, "%.12g" % pt.q_star,
                    "%.12g" % pt.slack, "true" if pt.feasible else "false"])

    feas = [pt for pt in points if pt.feasible]
    print("traced %d points, %d feasible" % (len(points), len(feas)),
          file=sys.stderr)
    print("single-user optimum d1* = %.12g" % d1_star, file=sys.stderr)
    if floor is not None:
        print("weak-user floor d2 >= %.12g (p=1/2 closed form)" % floor,
              file=sys.stderr)
    if feas:
        lo = min(pt.d2_min for pt in feas)
        print("smallest traced d2_min = %.12g at d1 = %.12g" %
              (lo, max(pt.d1 for pt in feas if pt.d2_min == lo)),
              file=sys.stderr)
    return 0 if feas else 3


if __name__ == "__main__":
    sys.exit(main())
