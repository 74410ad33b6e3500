"""Acceptance suite: one test per criterion, each at its stated tolerance."""

import itertools
import math
import time

import numpy as np
import pytest

from resetruin.core import classical_ruin, validate_walk
from resetruin.critical import check_symmetry, critical_family, flatness_score, walk_certificate
from resetruin.exact import escape_probability, ruin_probability, solve_discounted
from resetruin.harness import reference
from resetruin.harness.reports import (
    DegenerateError,
    bisect_critical_weight,
    figure_report,
    table2_report,
)
from resetruin.harness.sweeps import grid
from resetruin.montecarlo import binomial_stderr
from resetruin.spectral import decompose, duality_residual, spectral_profiles

GAMMAS = grid(0.05, 0.05, 0.95)
C_STAR_A10_P07 = 0.0142521994


@pytest.fixture(scope="module")
def mc_report(mc_n, mc_seed):
    t0 = time.perf_counter()
    report = table2_report(mc_n, mc_seed)
    return report, time.perf_counter() - t0


def test_table1_reproduction(criterion):
    t0 = time.perf_counter()
    worst, degenerate_ok = 0.0, False
    for a, p, sites, _pi, printed in reference.TABLE1:
        walk = validate_walk(a, p)
        fam = critical_family(walk, sites)
        worst = max(worst, abs(fam.C_star - printed))
        if walk.symmetric:
            try:
                bisect_critical_weight(walk, sites)
            except DegenerateError:
                degenerate_ok = fam.C_star == 0.5
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and degenerate_ok and elapsed < 1.0
    criterion(1, "Table 1 reproduction", ok,
              f"max |C*-printed| = {worst:.2e} (<= 1e-9), p=1/2 degenerate={degenerate_ok}, {elapsed:.2f}s (< 1s)")


def test_bisection_recovery(criterion):
    t0 = time.perf_counter()
    worst, rows = 0.0, 0
    for a, p, sites, pi_theory, _c in reference.TABLE1:
        walk = validate_walk(a, p)
        if walk.symmetric:
            continue
        worst = max(worst, abs(bisect_critical_weight(walk, sites, tol=1e-10) - float(pi_theory)))
        rows += 1
    elapsed = time.perf_counter() - t0
    ok = rows == 7 and worst <= 1e-7 and elapsed < 5.0
    criterion(2, "Bisection recovery", ok,
              f"{rows} rows, max |pi1-pi1*| = {worst:.2e} (<= 1e-7), {elapsed:.2f}s (< 5s)")


def test_critical_flatness(criterion):
    worst = 0.0
    for a, p, sites, _pi, _c in reference.TABLE1:
        walk = validate_walk(a, p)
        worst = max(worst, flatness_score(walk, critical_family(walk, sites).materialize(), GAMMAS))
    criterion(3, "Critical flatness", worst <= 1e-10, f"max spread = {worst:.2e} (<= 1e-10)")


def test_spectral_exact_equivalence(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for a in range(2, 33):
        for p in (0.3, 0.5, 0.7):
            walk = validate_walk(a, p)
            d = decompose(walk)
            for g in GAMMAS:
                sol = solve_discounted(walk, g)
                u, s = spectral_profiles(d, g)
                worst = max(worst, np.max(np.abs(u - sol.u[1:-1])), np.max(np.abs(s - sol.s[1:-1])))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 30.0
    criterion(4, "Spectral/exact equivalence", ok,
              f"max |spectral-exact| = {worst:.2e} (<= 1e-9), {elapsed:.2f}s (< 30s)")


def test_duality_identity(criterion):
    worst, worst_rel, over = 0.0, 0.0, 0
    for a in range(2, 33):
        for p in (0.3, 0.5, 0.6, 0.7):
            d = decompose(validate_walk(a, p))
            for z in range(1, a):
                r = duality_residual(d, z)
                scale = float(np.max(np.abs(d.B[:, z - 1])))
                worst, worst_rel = max(worst, r), max(worst_rel, r / scale)
                over += r > 1e-12
    criterion(5, "Duality identity", worst <= 1e-12,
              f"max residual = {worst:.2e} (<= 1e-12), {over} sites above bound, "
              f"max relative residual = {worst_rel:.1e}")


def test_detector_geometry_equivalence(criterion):
    mismatches, found, worst_k = [], 0, 0.0
    for a in (6, 8, 9, 10, 12):
        for p in (0.5, 0.6, 0.7):
            walk = validate_walk(a, p)
            for m in range(1, 5):
                for sites in itertools.combinations(range(1, a), m):
                    cert = walk_certificate(walk, sites)
                    geo = check_symmetry(walk, sites)
                    if (cert is None) != (geo is None):
                        mismatches.append((a, p, sites))
                        continue
                    if cert is None:
                        continue
                    found += 1
                    neutral = (geo[1],) if geo[1] is not None else ()
                    if cert.pairs != geo[0] or cert.neutral_sites != neutral:
                        mismatches.append((a, p, sites))
                    if cert.pairs:
                        k_ref = (p / (1 - p)) ** a
                        worst_k = max(worst_k, abs(cert.K - k_ref) / k_ref)
    ok = not mismatches and worst_k <= 1e-10 and found > 0
    criterion(6, "Detector/geometry equivalence", ok,
              f"{found} symmetric subsets, {len(mismatches)} mismatches, max rel K error = {worst_k:.2e} (<= 1e-10)")


def test_figure_regeneration(criterion):
    t0 = time.perf_counter()
    report = figure_report(tol=5e-5)
    elapsed = time.perf_counter() - t0
    ok = report.max_error <= 5e-5 and report.universal_spread <= 1e-12 and elapsed < 5.0
    criterion(7, "Figure data regeneration", ok,
              f"{len(report.checks)} points, max error = {report.max_error:.2e} (<= 5e-5), "
              f"pair spread = {report.universal_spread:.2e} (<= 1e-12), {elapsed:.2f}s (< 5s)")


def test_midpoint_crossing(criterion):
    walk = validate_walk(10, 0.6)
    reset = critical_family(walk, (3, 7)).materialize()
    worst = max(abs(ruin_probability(walk, reset, g, 5) - 0.1163636364) for g in GAMMAS)
    criterion(8, "Midpoint crossing", worst <= 1e-10, f"max |q_5 - C*| = {worst:.2e} (<= 1e-10)")


def test_monte_carlo_validation(criterion, mc_report, mc_n):
    report, elapsed = mc_report
    failed = [r.sites for r in report.rows if not r.passed]
    worst_z = max(r.deviation / r.sigma for r in report.rows)
    ok = not failed and report.chi2 <= 21.67 and len(report.rows) == 9
    criterion(9, "Monte Carlo validation", ok,
              f"n = {mc_n:.0e}, max |z| = {worst_z:.2f} (<= 4), chi2 = {report.chi2:.2f} (<= 21.67), "
              f"{elapsed:.0f}s")


def test_neutral_site_freedom(criterion, mc_report, mc_n):
    report, _ = mc_report
    rows = [r for r in report.rows if r.a == 10 and r.p == 0.7 and r.sites == (3, 5, 7)]
    by_weight = {round(r.weights[1], 12): r for r in rows}
    r3, r7 = by_weight[0.3], by_weight[0.7]
    sigma = binomial_stderr(C_STAR_A10_P07, mc_n)
    gap = abs(r3.estimate.C_hat - r7.estimate.C_hat)
    each = max(abs(r.estimate.C_hat - C_STAR_A10_P07) for r in (r3, r7))
    ok = gap <= 4 * math.sqrt(2) * sigma and each <= 4 * sigma
    criterion(10, "Neutral-site freedom (MC)", ok,
              f"|C_0.3 - C_0.7| = {gap:.2e} (<= {4 * math.sqrt(2) * sigma:.2e}), "
              f"max |C - C*| = {each:.2e} (<= {4 * sigma:.2e})")


def test_complementarity_and_limits(criterion):
    worst_sum, worst_limit = 0.0, 0.0
    for a, p, sites, _pi, _c in reference.TABLE1:
        walk = validate_walk(a, p)
        reset = critical_family(walk, sites).materialize()
        for g in GAMMAS:
            for z in range(a + 1):
                total = ruin_probability(walk, reset, g, z) + escape_probability(walk, reset, g, z)
                worst_sum = max(worst_sum, abs(total - 1.0))
        for z in walk.interior:
            worst_limit = max(worst_limit, abs(ruin_probability(walk, reset, 1e-8, z) - classical_ruin(walk, z)))
    ok = worst_sum <= 1e-12 and worst_limit <= 1e-6
    criterion(11, "Complementarity and limits", ok,
              f"max |q+e-1| = {worst_sum:.2e} (<= 1e-12), max |q(1e-8)-classical| = {worst_limit:.2e} (<= 1e-6)")
