"""Command-line interface.

Examples::

    resetruin solve --a 10 --p 0.6 --gamma 0.5 --sites 3,7 --weights 4/13,9/13 --z 5
    resetruin critical --a 10 --p 0.7 --sites 3,5,7 --neutral-weight 0.3
    resetruin sweep-gamma --a 10 --p 0.6 --sites 3,7 --pi1 0.1,0.2,4/13 --gamma-grid 0.05:0.05:0.95 --out out/
    resetruin mc --a 10 --p 0.6 --gamma 0.5 --sites 3,7 --weights 4/13,9/13 --n 1000000 --seed 42
    resetruin verify table1
    resetruin verify table2 --n 1000000 --seed 42
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .. import __version__
from ..core import DomainError, validate_reset, validate_walk
from ..critical import SymmetryError, critical_family
from ..exact import coupling_constant, ruin_probability
from ..montecarlo import estimate
from . import reports
from .sweeps import (
    grid,
    profile_q_vs_z,
    sweep_C_vs_gamma,
    universality_Cstar_vs_p,
    write_series,
)


def _number(text: str) -> float:
    """Parse a decimal or a fraction such as ``4/13``."""
    return float(Fraction(text.strip()))


def _numbers(text: str) -> list[float]:
    return [_number(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _grid(text: str) -> list[float]:
    try:
        lo, step, hi = (_number(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:STEP:HI, got {text!r}")
    return grid(lo, step, hi)


def _pairs(text: str) -> list[tuple[int, ...]]:
    return [tuple(_ints(chunk)) for chunk in text.split(";") if chunk.strip()]


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_solve(args) -> int:
    walk = validate_walk(args.a, args.p)
    reset = validate_reset(walk, args.sites, args.weights)
    cb = coupling_constant(walk, reset, args.gamma)
    out = {"u_bar": cb.u_bar, "s_bar": cb.s_bar, "C": cb.C}
    if args.z is not None:
        out["q_z"] = ruin_probability(walk, reset, args.gamma, args.z)
    _emit(out)
    return 0


def cmd_critical(args) -> int:
    walk = validate_walk(args.a, args.p)
    family = critical_family(walk, args.sites)
    reset = family.materialize(args.neutral_weight)
    _emit({
        "pi_star": dict(zip(map(str, reset.sites), reset.weights)),
        "C_star": family.C_star,
        "pairs": [list(pr) for pr in sorted(family.pair_ratios)],
        "neutral_site": family.neutral_site,
    })
    return 0


def _write_all(series, out: Path, provenance=None) -> None:
    for i, s in enumerate(series):
        path = write_series(s, out, i, provenance)
        print(path)


def cmd_sweep_gamma(args) -> int:
    walk = validate_walk(args.a, args.p)
    _write_all(sweep_C_vs_gamma(walk, args.sites, args.pi1, args.gamma_grid), args.out)
    return 0


def cmd_profile(args) -> int:
    walk = validate_walk(args.a, args.p)
    reset = validate_reset(walk, args.sites, args.weights)
    _write_all(profile_q_vs_z(walk, reset, args.gammas), args.out)
    return 0


def cmd_universality(args) -> int:
    _write_all(universality_Cstar_vs_p(args.a, args.p_grid, args.pairs), args.out)
    return 0


def cmd_mc(args) -> int:
    walk = validate_walk(args.a, args.p)
    reset = validate_reset(walk, args.sites, args.weights)
    est = estimate(walk, reset, args.gamma, args.n, args.seed,
                   c_star_ref=args.cstar_ref, workers=args.workers)
    _emit(est.to_dict())
    return 0


def _print_table1(rows) -> None:
    print(f"{'a':>3} {'p':>4} {'sites':<10} {'pi1*':>14} {'pi1 bisected':>14} "
          f"{'C*':>14} {'|C-C*|':>10} {'|pi-pi*|':>10}  result")
    for r in rows:
        bis = "degenerate" if r.pi_star_bisected is None else f"{r.pi_star_bisected:.10f}"
        pe = "-" if r.pi_error is None else f"{r.pi_error:.2e}"
        print(f"{r.a:>3} {r.p:>4} {','.join(map(str, r.sites)):<10} {r.pi_star_theory:>14.10f} "
              f"{bis:>14} {r.C_star_theory:>14.10f} {r.abs_error:>10.2e} {pe:>10}  "
              f"{'PASS' if r.passed else 'FAIL'}")


def _print_table2(report) -> None:
    print(f"{'a':>3} {'p':>4} {'sites':<8} {'weights':<24} {'C*':>13} {'C_hat':>13} "
          f"{'|dev|':>9} {'sigma':>9} {'z':>6}  result")
    for r in report.rows:
        w = ",".join(f"{x:.4f}" for x in r.weights)
        print(f"{r.a:>3} {r.p:>4} {','.join(map(str, r.sites)):<8} {w:<24} {r.C_theory:>13.10f} "
              f"{r.estimate.C_hat:>13.10f} {r.deviation:>9.2e} {r.sigma:>9.2e} "
              f"{r.deviation / r.sigma:>6.2f}  {'PASS' if r.passed else 'FAIL'}")
    print(f"chi2 = {report.chi2:.3f} (limit {report.chi2_limit}) "
          f"{'PASS' if report.chi2 <= report.chi2_limit else 'FAIL'}")


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.which == "table1":
        rows = reports.table1_report(tol=args.tol)
        _print_table1(rows)
        ok = all(r.passed for r in rows)
        payload = {"rows": [r.to_dict() for r in rows], "passed": ok}
    elif args.which == "table2":
        report = reports.table2_report(args.n, args.seed, workers=args.workers)
        _print_table2(report)
        ok = report.passed
        payload = report.to_dict()
    else:
        report = reports.figure_report()
        d = report.to_dict()
        print(f"{d['n_points']} points, max error {d['max_error']:.2e} (tol {d['tol']}), "
              f"pair spread {d['universal_spread']:.2e}  {'PASS' if report.passed else 'FAIL'}")
        ok = report.passed
        payload = d
    payload["elapsed_s"] = time.perf_counter() - t0
    payload["version"] = __version__
    if args.json:
        Path(args.json).write_text(json.dumps(payload, indent=2, default=str))
    print("OK" if ok else "FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resetruin", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def walk_args(p, gamma=False):
        p.add_argument("--a", type=int, required=True, help="domain size")
        p.add_argument("--p", type=_number, required=True, help="up-step probability")
        if gamma:
            p.add_argument("--gamma", type=_number, required=True, help="resetting rate")

    p = sub.add_parser("solve", help="exact coupling constant and ruin probability")
    walk_args(p, gamma=True)
    p.add_argument("--sites", type=_ints, required=True)
    p.add_argument("--weights", type=_numbers, required=True)
    p.add_argument("--z", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("critical", help="critical distribution and invariant constant")
    walk_args(p)
    p.add_argument("--sites", type=_ints, required=True)
    p.add_argument("--neutral-weight", type=_number, default=0.0)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("sweep-gamma", help="C against gamma for two-site distributions")
    walk_args(p)
    p.add_argument("--sites", type=_ints, required=True)
    p.add_argument("--pi1", type=_numbers, required=True)
    p.add_argument("--gamma-grid", type=_grid, default=grid(0.05, 0.05, 0.95))
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_sweep_gamma)

    p = sub.add_parser("profile", help="ruin probability against starting site")
    walk_args(p)
    p.add_argument("--sites", type=_ints, required=True)
    p.add_argument("--weights", type=_numbers, required=True)
    p.add_argument("--gammas", type=_numbers, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("universality", help="invariant constant against p per site pair")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p-grid", type=_grid, default=grid(0.1, 0.05, 0.9))
    p.add_argument("--pairs", type=_pairs, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_universality)

    p = sub.add_parser("mc", help="Monte Carlo estimate of the coupling constant")
    walk_args(p, gamma=True)
    p.add_argument("--sites", type=_ints, required=True)
    p.add_argument("--weights", type=_numbers, required=True)
    p.add_argument("--n", type=int, required=True, help="trajectories per reset site")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cstar-ref", type=_number)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("verify", help="run a verification report")
    p.add_argument("which", choices=("table1", "table2", "figures"))
    p.add_argument("--tol", type=float, default=reports.ROW_TOL)
    p.add_argument("--n", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int)
    p.add_argument("--json", help="also write the report as JSON to this path")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, SymmetryError, reports.DegenerateError, reports.NoSignChangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
