"""Self-check suites run by ``harmbohr verify``."""

import math
import time

import numpy as np

from . import series as S
from .extremal import (area_quadrature, lhs_bruteforce,
                       required_order, sample_class_coefficients, sharpness_certificate)
from .functionals import COROLLARIES, corollary_params, make_functional, reference_constants
from .radius import radius_for, verify_unique, wall_location
from .specfun import PI2_6, li2, li2_series_oracle
from .tables import M_GRID, TABLE_IDS, load_table, reproduce

RADII = (0.1, 0.3, 0.5, 0.7, 0.9)


def suite_dilog():
    worst = 0.0
    for r in np.linspace(0.0, 1.0, 1002)[1:-1]:
        err = abs(li2(r) + li2(1 - r) - PI2_6 + math.log(r) * math.log1p(-r))
        worst = max(worst, err)
    ok = worst <= 1e-12
    for x in (0.1, 0.5, 0.9):
        s, bound = li2_series_oracle(x, 2000, certify=True)
        ok &= abs(li2(x) - s) <= bound + 1e-15
    return ok, f"reflection max err {worst:.2e}"


def suite_oracles():
    worst = 0.0
    for r in RADII:
        for M in (0.14, 0.7, 1.26):
            pairs = [
                (S.growth_majorant(r, M), S.oracle_growth(r, M)),
                (S.tail_majorant(r, M, 5, method="closed"), S.oracle_tail(r, M, 5)),
                (S.area_majorant(r, M), S.oracle_area(r, M)),
            ]
            for value, (s, rem) in pairs:
                worst = max(worst, abs(value - s) - rem)
        for t in (0, 1, 3):
            s, rem = S.oracle_quadratic(r, t)
            worst = max(worst, abs(S.quadratic_tail(r, t, method="closed") - s) - rem)
    return worst <= 1e-10, f"max excess over certified remainder {worst:.2e}"


def _table_functionals():
    for tid in TABLE_IDS:
        for fid in load_table(tid).functionals:
            yield fid


def suite_monotonicity():
    fails = []
    for fid in _table_functionals():
        prev = math.inf
        for M in M_GRID:
            p = corollary_params(fid, M)
            func = make_functional(fid, p)
            hi = S.check_radius(1 - 1e-9)
            if func.starred:
                hi = wall_location(M) or hi
            if not verify_unique(func, (1e-9, hi), 200):
                fails.append(f"{fid.value}@{M} scan")
            R = radius_for(fid, p).value
            if not R < prev:
                fails.append(f"{fid.value}@{M} radius order")
            prev = R
    for M in (0.0, 0.7, 1.26):
        xs = np.linspace(0.01, 0.99, 100)
        d = [S.area_majorant(x + 1e-6, M) - S.area_majorant(x, M) for x in xs]
        if min(d) <= 0:
            fails.append(f"F_M derivative M={M}")
    return not fails, ", ".join(fails) or "all increasing"


def suite_tables():
    bad = 0
    total = 0
    for tid in TABLE_IDS:
        rows = reproduce(tid)
        bad += sum(not r.match4dp for r in rows)
        total += len(rows)
    return bad == 0, f"{total - bad}/{total} entries match (truncated to 4 dp)"


def suite_sharpness():
    bad = []
    for fid in _table_functionals():
        for M in M_GRID:
            p = corollary_params(fid, M)
            res = radius_for(fid, p)
            if not sharpness_certificate(fid, p, res, 1e-4).holds:
                bad.append(f"{fid.value}@{M}")
    return not bad, ", ".join(bad) or "all table roots certified"


def suite_quadrature():
    worst = 0.0
    for M in (0.14, 0.7, 1.26):
        for r in (0.3, 0.5, 0.9):
            s, rem = S.oracle_area(r, M)
            worst = max(worst, abs(area_quadrature(M, r) - s))
    return worst <= 1e-6, f"max |quadrature - series| {worst:.2e}"


def suite_sampled(seed=0, members=200):
    violations = 0
    checked = 0
    for k, fid in enumerate(COROLLARIES):
        for j, M in enumerate(M_GRID):
            p = corollary_params(fid, M)
            r = 0.9 * radius_for(fid, p).value
            d = S.boundary_distance(M)
            K = required_order(r, M)
            for i in range(members):
                c = sample_class_coefficients(M, (seed, k, j, i), K)
                val, _ = lhs_bruteforce(fid, p, r, c)
                checked += 1
                violations += val > d
    return violations == 0, f"{violations} violations in {checked} samples"


def suite_constants():
    c = reference_constants()
    ok = abs(c["quintic_root"] - 0.567284) <= 1e-4 and abs(c["quintic_lambda"] - 18.6095) <= 1e-4
    ok &= abs(c["quartic_root"] - 0.537869) <= 1e-4 and abs(c["quartic_lambda"] - 16.4618) <= 1e-4
    ok &= abs(radius_for("ana-rpn", extras=(1,)).value - 1 / 3) <= 1e-10
    ok &= abs(radius_for("ana-rn", extras=(1,)).value - (math.sqrt(5) - 2)) <= 1e-10
    return ok, f"lambda pairs ({c['quintic_root']:.6f}, {c['quintic_lambda']:.4f}), " \
               f"({c['quartic_root']:.6f}, {c['quartic_lambda']:.4f})"


def run(seed=0, quick=False):
    """Run every suite; returns a list of (name, passed, detail, seconds)."""
    suites = [
        ("dilogarithm", suite_dilog),
        ("series-oracles", suite_oracles),
        ("constants", suite_constants),
        ("monotonicity", suite_monotonicity),
        ("tables", suite_tables),
        ("sharpness", suite_sharpness),
    ]
    if not quick:
        suites.append(("quadrature", suite_quadrature))
        suites.append(("sampled-class", lambda: suite_sampled(seed)))
    out = []
    for name, fn in suites:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing suite is a failing suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail, time.perf_counter() - t0))
    return out
