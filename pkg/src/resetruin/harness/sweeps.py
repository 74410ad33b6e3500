"""Data series for coupling-constant, ruin-profile and universality sweeps."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .. import __version__
from ..core import WalkSpec, validate_reset, validate_walk
from ..critical import critical_family
from ..exact import coupling_constant, ruin_profile

CLASSICAL_GAMMA_PROXY = 1e-8
UNIVERSALITY_GAMMA = 0.5

COLUMNS = {
    "C_vs_gamma": ("gamma", "C"),
    "q_vs_z": ("z", "q"),
    "Cstar_vs_p": ("p", "C_star"),
}


@dataclass(frozen=True)
class SweepSeries:
    kind: str
    parameters: dict
    points: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in COLUMNS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        pts = tuple(sorted((float(x), float(y)) for x, y in self.points))
        if not all(np.isfinite(y) for _, y in pts):
            raise ValueError("series values must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def x(self) -> np.ndarray:
        return np.array([x for x, _ in self.points])

    @property
    def y(self) -> np.ndarray:
        return np.array([y for _, y in self.points])

    def value_at(self, x: float, tol: float = 1e-9) -> float:
        for xi, yi in self.points:
            if abs(xi - x) <= tol:
                return yi
        raise KeyError(x)


def grid(lo: float, step: float, hi: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to 12 decimals."""
    n = int(round((hi - lo) / step))
    return [round(lo + k * step, 12) for k in range(n + 1)]


def sweep_C_vs_gamma(
    walk: WalkSpec, sites: Sequence[int], pi1_list: Sequence[float], gamma_grid: Sequence[float]
) -> list[SweepSeries]:
    """``C(pi, gamma)`` for two-site distributions ``(pi1, 1 - pi1)``."""
    sites = tuple(sorted(sites))
    if len(sites) != 2:
        raise ValueError(f"need exactly two sites, got {sites}")
    out = []
    for pi1 in pi1_list:
        reset = validate_reset(walk, sites, [float(pi1), 1.0 - float(pi1)])
        pts = [(g, coupling_constant(walk, reset, g).C) for g in gamma_grid]
        params = {"a": walk.a, "p": walk.p, "sites": list(sites), "pi1": float(pi1)}
        out.append(SweepSeries("C_vs_gamma", params, tuple(pts)))
    return out


def profile_q_vs_z(walk: WalkSpec, reset, gamma_list: Sequence[float]) -> list[SweepSeries]:
    """Ruin probability against starting site at each ``gamma``.

    ``gamma = 0`` is evaluated at ``1e-8``; the series records both values.
    """
    out = []
    for g in gamma_list:
        g_eval = CLASSICAL_GAMMA_PROXY if g == 0 else g
        q = ruin_profile(walk, reset, g_eval)
        pts = [(z, q[z]) for z in walk.interior]
        params = {
            "a": walk.a, "p": walk.p, "sites": list(reset.sites),
            "weights": list(reset.weights), "gamma": float(g), "gamma_evaluated": g_eval,
        }
        out.append(SweepSeries("q_vs_z", params, tuple(pts)))
    return out


def universality_Cstar_vs_p(
    a: int, p_grid: Sequence[float], site_pairs: Sequence[Sequence[int]],
    gamma: float = UNIVERSALITY_GAMMA,
) -> list[SweepSeries]:
    """``C`` under each pair's critical distribution, as a function of ``p``.

    Values come from the renewal solution at ``gamma``, not from the closed
    form, so agreement between pairs is a genuine check.
    """
    out = []
    for pair in site_pairs:
        pts = []
        for p in p_grid:
            walk = validate_walk(a, p)
            reset = critical_family(walk, pair).materialize()
            pts.append((p, coupling_constant(walk, reset, gamma).C))
        params = {"a": a, "sites": list(pair), "gamma": gamma}
        out.append(SweepSeries("Cstar_vs_p", params, tuple(pts)))
    return out


def _stem(series: SweepSeries, index: int) -> str:
    tag = {"C_vs_gamma": "pi1", "q_vs_z": "gamma", "Cstar_vs_p": "sites"}[series.kind]
    val = series.parameters.get(tag)
    if isinstance(val, list):
        val = "-".join(str(v) for v in val)
    return f"{series.kind}_{index:02d}_{tag}={val}"


def write_series(series: SweepSeries, directory: Path, index: int = 0,
                 provenance: dict | None = None) -> Path:
    """Write ``<stem>.csv`` plus a ``<stem>.json`` sidecar; return the CSV path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = _stem(series, index)
    path = directory / f"{stem}.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS[series.kind])
        for x, y in series.points:
            writer.writerow([f"{x:.17g}", f"{y:.17g}"])
    meta = {
        "kind": series.kind,
        "parameters": series.parameters,
        "columns": list(COLUMNS[series.kind]),
        "csv": path.name,
        "provenance": {"tool": "resetruin", "version": __version__, **(provenance or {})},
    }
    (directory / f"{stem}.json").write_text(json.dumps(meta, indent=2, sort_keys=True))
    return path


def read_series(csv_path: Path) -> SweepSeries:
    csv_path = Path(csv_path)
    meta = json.loads(csv_path.with_suffix(".json").read_text())
    with csv_path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if tuple(rows[0]) != COLUMNS[meta["kind"]]:
        raise ValueError(f"unexpected header {rows[0]} in {csv_path}")
    pts = tuple((float(x), float(y)) for x, y in rows[1:])
    return SweepSeries(meta["kind"], meta["parameters"], pts)
