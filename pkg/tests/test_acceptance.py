"""Acceptance gate: nine numbered end-to-end checks.

Each test prints one [acceptance] line, so pytest -s shows the whole
checklist on one screen. A FAIL line always comes with the assert that
produced it; the numbered set is the release contract for this package.
"""

import math
import subprocess
import sys
from fractions import Fraction

import numpy as np

from jsccbounds import binary_info as bi
from jsccbounds import bounds_core as bc
from jsccbounds import broadcast_region as br
from jsccbounds import oracles as orc
from jsccbounds._scalar_opt import Lcg64


def _report(num, name, ok, detail=""):
    line = "[acceptance] #%d %s: %s" % (num, name, "PASS" if ok else "FAIL")
    if detail:
        line += " (%s)" % detail
    print(line)
    assert ok, line


# ---------- 1: matched-rate searches return the source noise exactly ----------


def test_01_uncoded_is_optimal_at_unit_ratio():
    cases = [(1, 1, Fraction(1, 10)), (2, 2, Fraction(1, 10)),
             (2, 2, Fraction(1, 4)), (3, 3, Fraction(1, 4))]
    ok = True
    for m, n, delta in cases:
        value, _ = orc.p2p_bruteforce(m, n, delta)
        ok = ok and value.value == delta
    _report(1, "uncoded optimal at rho=1 (exact rational)", ok,
            "%d instances" % len(cases))


# ---------- 2: brute force never beats the analytic floors ----------


def test_02_bruteforce_respects_lower_bounds():
    worst_a = worst_s = float("inf")
    ok = True
    for m, n in ((1, 2), (1, 3), (2, 3), (2, 4)):
        for delta in (Fraction(1, 10), Fraction(1, 4)):
            value, _ = orc.p2p_bruteforce(m, n, delta)
            dstar = float(value)
            params = bc.SystemParams.from_counts(m, n, float(delta))
            m_a = dstar - bc.d_asym(n / m, float(delta))
            m_s = dstar - bc.expected_sphere_floor(params)
            worst_a = min(worst_a, m_a)
            worst_s = min(worst_s, m_s)
            ok = ok and m_a >= -1e-12 and m_s >= -1e-12
    _report(2, "exhaustive D* above asymptotic and sphere floors", ok,
            "min margins %.3g / %.3g" % (worst_a, worst_s))


# ---------- 3: achievable frontier points satisfy the outer bound ----------


def test_03_frontier_inside_outer_bound():
    qs = np.linspace(0.0, 0.5, 50)
    worst = float("inf")
    ok = True
    for m, n, w1, w2 in ((1, 2, 0, 1), (2, 4, 1, 2), (1, 4, 1, 2)):
        points = orc.broadcast_frontier(m, n, w1, w2)
        bp = br.BinaryBroadcastParams(rho=n / m, p=0.5, delta1=w1 / n,
                                      delta2=(w2 - w1) / (n - 2 * w1), n=n)
        for pt in points:
            for q in qs:
                s = br.outer_bound_slack(float(pt.d1), float(pt.d2),
                                         float(q), bp)
                worst = min(worst, s)
                ok = ok and s >= -1e-9
    _report(3, "every exhaustive frontier point passes the outer bound", ok,
            "min slack %.6f" % worst)


# ---------- 4: binomial neighbour ratio, exact value and O(1/n^2) error ----


def test_04_binomial_ratio_and_error_scaling():
    ratio, _ = orc.binomial_gamma_exact(4, Fraction(1, 4), 1)
    ok_exact = ratio.value == Fraction(2, 5)

    def err(n):
        exact, _ = orc.binomial_gamma_exact(n, Fraction(1, 5), 5)
        return abs(orc.binomial_gamma_approx(n, 0.2, 5) - float(exact))

    e1, e4 = err(1000), err(4000)
    ok_scale = e4 <= e1 / 8.0
    _report(4, "binomial ratio exact at small n, error drops like n^-2",
            ok_exact and ok_scale,
            "ratio %s, err %0.3g -> %0.3g" % (ratio.value, e1, e4))


# ---------- 5: all inequality suites clean on the fine grid ----------


def test_05_inequality_suites_clean():
    reports = orc.verify_inequalities(orc.ALL_SUITES, grid_step=1e-3,
                                      tol=1e-9)
    count = sum(rep.violations for rep in reports)
    peak = max(rep.max_violation for rep in reports)
    ok = count == 0 and peak <= 1e-9 and len(reports) == len(orc.ALL_SUITES)
    _report(5, "all %d inequality suites clean at grid 1e-3" % len(reports),
            ok, "max violation %.3g" % peak)


# ---------- 6: closed forms agree with black-box searches ----------


def test_06_closed_forms_match_searches():
    rng = Lcg64(7)
    worst_rbar = 0.0
    ok = True
    for _ in range(20):
        p = 0.05 + 0.45 * rng.uniform()
        q = 0.5 * rng.uniform()
        d = p * rng.uniform()
        diff = abs(orc.rbar_grid(p, q, d) - br.rbar_binary(p, q, d))
        worst_rbar = max(worst_rbar, diff)
        ok = ok and diff <= 1e-4

    worst_gq = -float("inf")
    for d1, d2 in ((0.1, 0.05), (0.2, 0.1)):
        cap = math.log(2) - bi.h_b(d1)
        for frac in (0.0, 0.25, 0.5, 0.75, 0.95):
            t = frac * cap
            excess = (orc.converse_search_gq(d1, d2, t, trials=10000, seed=0)
                      - br.g_bsc(d1, d2, t))
            worst_gq = max(worst_gq, excess)
            ok = ok and excess <= 1e-6
    _report(6, "grid and random searches track the closed forms", ok,
            "rbar diff %.3g, search excess %.3g" % (worst_rbar, worst_gq))


# ---------- 7: endpoint identities forced by the formulas ----------


def test_07_forced_endpoint_identities():
    gp = br.GaussianBroadcastParams(sigma2=1.0, aux_var=0.5, power=4.0,
                                    n1=1.0, n2=1.0, rho=1.0)
    ok = abs(br.gaussian_fp(gp, 0.0)) <= 1e-12
    cap1 = 0.5 * math.log(1.0 + gp.power / gp.n1)
    ok = ok and abs(br.gaussian_gq(gp, cap1)) <= 1e-12

    eps = br.ErasureParams(eps1=0.1, eps2=0.3)
    ok = ok and abs(br.g_bec(eps, 0.0) - 0.7 * math.log(2)) <= 1e-12
    ok = ok and abs(br.g_bec(eps, 0.9 * math.log(2))) <= 1e-12

    # the critical d1 is a knife edge; pass the float-computed optimum
    bp = br.BinaryBroadcastParams(rho=1.2, p=0.5, delta1=0.08, delta2=0.05)
    d1 = bc.d_asym(1.2, 0.08)
    (pt,) = br.region_trace(bp, [d1])
    margin = pt.d2_min - bi.conv(0.05, d1)
    ok = ok and margin >= -1e-6
    _report(7, "gaussian/erasure endpoints and separation floor hold", ok,
            "floor margin %.3g" % margin)


# ---------- 8: mean coupling deviation below sqrt(n delta2) ----------


def test_08_coupling_moment_bound():
    ok = True
    for n in (10, 100, 1000):
        for d1 in (Fraction(1, 10), Fraction(3, 10)):
            for d2 in (Fraction(1, 20), Fraction(1, 5)):
                dev = orc.coupling_distance_exact(n, d1, d2)
                # dev <= sqrt(n d2) compared exactly as dev^2 <= n d2
                ok = ok and dev.value ** 2 <= n * d2
    _report(8, "exact coupling deviation below sqrt(n delta2)", ok,
            "12 instances, exact arithmetic")


# ---------- 9: byte-identical CLI output across repeated runs ----------


def test_09_cli_byte_determinism():
    commands = [
        ["eval", "--fn", "h_b", "--x", "0.25"],
        ["bound", "lower", "--n", "10000", "--rho", "1.2", "--delta", "0.2"],
        ["bound", "region", "--rho", "1.2", "--delta1", "0.08",
         "--delta2", "0.05", "--d1-min", "0.1", "--d1-max", "0.2",
         "--d1-step", "0.05"],
        ["bound", "gaussian", "--sigma2", "1", "--aux-var", "0.5",
         "--power", "4", "--n1", "1", "--n2", "1", "--rho", "1",
         "--d1", "0.2", "--format", "json"],
        ["oracle", "p2p", "--m", "2", "--n", "3", "--delta", "1/4",
         "--exact"],
        ["oracle", "gq-search", "--delta1", "0.1", "--delta2", "0.05",
         "--t", "0.2", "--trials", "2000", "--seed", "11",
         "--format", "json"],
        ["verify", "--suite", "f-lt-1,phi-deriv-le-1", "--grid-step", "0.01"],
    ]
    ok = True
    for cmd in commands:
        runs = [subprocess.run([sys.executable, "-m", "jsccbounds.cli"] + cmd,
                               capture_output=True) for _ in range(3)]
        ok = ok and all(r.returncode == runs[0].returncode for r in runs)
        ok = ok and all(r.stdout == runs[0].stdout for r in runs)
        ok = ok and runs[0].stdout != b""
    _report(9, "CLI output byte-identical across three runs", ok,
            "%d commands" % len(commands))
