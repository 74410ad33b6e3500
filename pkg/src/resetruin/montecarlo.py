"""Direct simulation of the walk with multi-site geometric resetting.

Each step first draws the reset indicator. On a reset the walker jumps to a
site drawn from ``pi`` (no absorption check; reset sites are interior).
Otherwise it moves +1 with probability ``p`` or -1, and the trajectory ends
on reaching 0 (ruin) or ``a`` (escape).

Randomness is counter based: trajectory ``j`` started from reset-site index
``i`` under ``seed`` owns the stream ``mix(key(seed, i, j) + k * GOLDEN)``,
``k = 0, 1, ...``. Results therefore do not depend on how trajectories are
split across workers or in which order the chunks finish.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numba
import numpy as np

from .core import DomainError, ResetSpec, WalkSpec

DEFAULT_STEP_CAP = 10**8
DEFAULT_CHUNK = 1 << 16

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0
_MASK64 = (1 << 64) - 1


class IterationCapError(RuntimeError):
    """A trajectory exceeded the step cap without being absorbed."""


class Absorption(enum.Enum):
    RUIN = 0
    ESCAPE = 1


@numba.njit(cache=True, nogil=True)
def _mix(x):
    x = (x ^ (x >> _S30)) * _M1
    x = (x ^ (x >> _S27)) * _M2
    return x ^ (x >> _S31)


@numba.njit(cache=True, nogil=True)
def _key(seed, site_index, trajectory):
    k = _mix(seed + _GOLDEN)
    k = _mix(k ^ (site_index * _M1 + _GOLDEN))
    return _mix(k ^ (trajectory * _M2 + _GOLDEN))


@numba.njit(cache=True, nogil=True)
def _uniform(key, counter):
    return np.float64(_mix(key + counter * _GOLDEN) >> _S11) * _INV53


@numba.njit(cache=True, nogil=True)
def _run(a, p, gamma, sites, cum, z0, key, cap):
    """One trajectory. Returns (ruined, steps, resets); steps = -1 on cap."""
    x = z0
    ctr = np.uint64(0)
    one = np.uint64(1)
    steps = 0
    resets = 0
    m = sites.shape[0]
    while steps < cap:
        steps += 1
        if _uniform(key, ctr) < gamma:
            ctr += one
            r = _uniform(key, ctr)
            ctr += one
            i = 0
            while i < m - 1 and r >= cum[i]:
                i += 1
            x = sites[i]
            resets += 1
        else:
            ctr += one
            if _uniform(key, ctr) < p:
                x += 1
            else:
                x -= 1
            ctr += one
            if x == 0:
                return 1, steps, resets
            if x == a:
                return 0, steps, resets
    return 0, -1, resets


@numba.njit(cache=True, nogil=True)
def _count_ruins(a, p, gamma, sites, cum, z0, seed, site_index, start, stop, cap):
    """Ruin count over trajectories ``start..stop-1``; -1 - j if j hit the cap."""
    ruins = 0
    for j in range(start, stop):
        key = _key(seed, site_index, np.uint64(j))
        ruined, steps, _ = _run(a, p, gamma, sites, cum, z0, key, cap)
        if steps < 0:
            return -1 - j
        ruins += ruined
    return ruins


@dataclass(frozen=True)
class Stream:
    """Identifies one counter-based random stream."""

    seed: int
    site_index: int
    trajectory: int

    @property
    def key(self) -> int:
        return int(_key(np.uint64(self.seed & _MASK64), np.uint64(self.site_index),
                        np.uint64(self.trajectory)))


@dataclass(frozen=True)
class TrajectoryOutcome:
    absorbed_at: Absorption
    steps: int
    resets: int


@dataclass(frozen=True)
class McEstimate:
    q_hat: Mapping[int, float]
    C_hat: float
    n: int
    seed: int
    stderr: float
    ruin_counts: Mapping[int, int] = field(default_factory=dict)
    escape_counts: Mapping[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "q_hat": {str(z): v for z, v in self.q_hat.items()},
            "C_hat": self.C_hat,
            "n": self.n,
            "seed": self.seed,
            "stderr": self.stderr,
            "ruin_counts": {str(z): v for z, v in self.ruin_counts.items()},
            "escape_counts": {str(z): v for z, v in self.escape_counts.items()},
        }


def _arrays(reset: ResetSpec):
    sites = np.asarray(reset.sites, dtype=np.int64)
    cum = np.cumsum(np.asarray(reset.weights, dtype=np.float64))
    cum[-1] = 1.0
    return sites, cum


def _check(walk: WalkSpec, gamma: float, z0: int) -> None:
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"resetting rate must lie in (0, 1), got {gamma}")
    if not (1 <= z0 <= walk.a - 1):
        raise DomainError(f"starting site {z0} is not interior to [0, {walk.a}]")


def simulate_trajectory(
    walk: WalkSpec,
    reset: ResetSpec,
    gamma: float,
    z0: int,
    stream: Stream,
    step_cap: int = DEFAULT_STEP_CAP,
) -> TrajectoryOutcome:
    _check(walk, gamma, z0)
    sites, cum = _arrays(reset)
    ruined, steps, resets = _run(walk.a, walk.p, float(gamma), sites, cum, int(z0),
                                 np.uint64(stream.key), int(step_cap))
    if steps < 0:
        raise IterationCapError(f"trajectory not absorbed within {step_cap} steps")
    return TrajectoryOutcome(Absorption.RUIN if ruined else Absorption.ESCAPE, steps, resets)


def _default_workers() -> int:
    return os.cpu_count() or 1


def ruin_count(
    walk: WalkSpec,
    reset: ResetSpec,
    gamma: float,
    z0: int,
    n: int,
    seed: int,
    site_index: int = 0,
    workers: int | None = None,
    chunk: int = DEFAULT_CHUNK,
    step_cap: int = DEFAULT_STEP_CAP,
) -> int:
    """Number of ruined trajectories among ``n`` started at ``z0``.

    ``site_index`` selects the stream family; :func:`estimate` uses the
    position of ``z0`` in ``reset.sites``.
    """
    _check(walk, gamma, z0)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    sites, cum = _arrays(reset)
    bounds = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]
    args = (walk.a, walk.p, float(gamma), sites, cum, int(z0),
            np.uint64(seed & _MASK64), np.uint64(site_index))

    def work(b):
        return _count_ruins(*args, b[0], b[1], int(step_cap))

    workers = workers or _default_workers()
    if workers == 1 or len(bounds) == 1:
        counts = [work(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(work, bounds))
    for c in counts:
        if c < 0:
            raise IterationCapError(
                f"trajectory {-1 - c} from z0={z0} not absorbed within {step_cap} steps"
            )
    return int(sum(counts))


def binomial_stderr(C: float, n: int) -> float:
    return math.sqrt(C * (1.0 - C) / n)


def estimate(
    walk: WalkSpec,
    reset: ResetSpec,
    gamma: float,
    n: int,
    seed: int,
    c_star_ref: float | None = None,
    workers: int | None = None,
    chunk: int = DEFAULT_CHUNK,
    step_cap: int = DEFAULT_STEP_CAP,
) -> McEstimate:
    """Run ``n`` trajectories from every reset site and weight the ruin rates.

    The result depends only on the inputs and ``seed``; ``workers`` and
    ``chunk`` change scheduling, never the numbers.
    """
    q_hat, ruins, escapes = {}, {}, {}
    for i, z in enumerate(reset.sites):
        r = ruin_count(walk, reset, gamma, z, n, seed, site_index=i,
                       workers=workers, chunk=chunk, step_cap=step_cap)
        ruins[z] = r
        escapes[z] = n - r
        q_hat[z] = r / n
    C_hat = math.fsum(w * q_hat[z] for z, w in zip(reset.sites, reset.weights))
    C_hat = min(1.0, max(0.0, C_hat))
    ref = C_hat if c_star_ref is None else float(c_star_ref)
    return McEstimate(q_hat, C_hat, n, seed, binomial_stderr(ref, n), ruins, escapes)


def chi_square(entries: Sequence[tuple[McEstimate, float]]) -> float:
    """Pearson statistic ``sum(((C_hat - C_th) / stderr)**2)``."""
    if not entries:
        raise DomainError("chi-square needs at least one entry")
    total = 0.0
    for est, c_th in entries:
        if not est.stderr > 0.0:
            raise DomainError("estimate has zero standard error")
        total += ((est.C_hat - c_th) / est.stderr) ** 2
    return total
