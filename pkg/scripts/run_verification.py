#!/usr/bin/env python3
"""Run the numerical verification battery and exit nonzero on any violation.

Covers the grid-scan inequality suites plus a handful of exact cross-checks
of the closed forms against brute-force oracles at toy sizes. Intended as a
pre-release smoke test; everything here is deterministic.

Example:
    python3 scripts/run_verification.py --grid-step 1e-3
    python3 scripts/run_verification.py --suites mgl-lin,g-convex --quick
"""

import argparse
import sys
import time
from fractions import Fraction

from jsccbounds import bounds_core as bc
from jsccbounds import oracles as orc


def run_suites(names, grid_step, tol):
    bad = 0
    for rep in orc.verify_inequalities(names, grid_step=grid_step, tol=tol):
        tag = "ok" if rep.violations == 0 else "VIOLATED"
        print("suite %-16s max %.3g at (%s): %s" %
              (rep.inequality, rep.max_violation,
               ", ".join("%.6g" % a for a in rep.argmax), tag))
        bad += rep.violations
    return bad


def run_cross_checks():
    bad = 0
    # matched rate: the exhaustive optimum is exactly the source noise
    for m, delta in ((1, Fraction(1, 10)), (2, Fraction(1, 4))):
        value, _ = orc.p2p_bruteforce(m, m, delta)
        ok = value.value == delta
        print("p2p m=n=%d delta=%s: D*=%s %s" %
              (m, delta, value.value, "ok" if ok else "MISMATCH"))
        bad += 0 if ok else 1
    # mismatched rate: brute force never undercuts the analytic floor
    for m, n in ((1, 2), (2, 3), (2, 4)):
        value, _ = orc.p2p_bruteforce(m, n, Fraction(1, 4))
        floor = bc.d_asym(n / m, 0.25)
        ok = float(value) >= floor - 1e-12
        print("p2p m=%d n=%d: D*=%.6g floor=%.6g %s" %
              (m, n, float(value), floor, "ok" if ok else "BELOW FLOOR"))
        bad += 0 if ok else 1
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suites", default=None,
                    help="comma list; default runs every suite")
    ap.add_argument("--grid-step", type=float, default=1e-3)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--quick", action="store_true",
                    help="coarse grid, skip the oracle cross-checks")
    args = ap.parse_args()

    names = list(orc.ALL_SUITES) if args.suites is None \
        else args.suites.split(",")
    step = max(args.grid_step, 1e-2) if args.quick else args.grid_step

    t0 = time.time()
    bad = run_suites(names, step, args.tol)
    if not args.quick:
        bad += run_cross_checks()
    print("done in %.1fs, %d violation(s)" % (time.time() - t0, bad))
    return 0 if bad == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
