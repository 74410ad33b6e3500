"""Walk and reset-distribution types, validation and the classical ruin formula."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

WEIGHT_SUM_TOL = 1e-12
SYMMETRIC_P_TOL = 1e-12


class DomainError(ValueError):
    """Raised when an input lies outside the domain of the model."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver exhausts its iteration budget."""


class RangeError(ValueError):
    """Raised when a computation would leave double-precision range."""


@dataclass(frozen=True)
class WalkSpec:
    """Biased nearest-neighbour walk on ``{0, ..., a}`` absorbed at both ends.

    ``p`` is the up-step probability; ``q = 1 - p`` is derived.
    """

    a: int
    p: float
    q: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", 1.0 - self.p)

    @property
    def ratio(self) -> float:
        """Down/up odds ``q/p``."""
        return self.q / self.p

    @property
    def symmetric(self) -> bool:
        return abs(self.p - 0.5) < SYMMETRIC_P_TOL

    @property
    def interior(self) -> range:
        return range(1, self.a)


@dataclass(frozen=True)
class ResetSpec:
    """Reset sites (sorted, interior) and their probability weights."""

    sites: tuple[int, ...]
    weights: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.sites)

    def weight_of(self, site: int) -> float:
        return self.weights[self.sites.index(site)]


def validate_walk(a: int, p: float) -> WalkSpec:
    """Build a :class:`WalkSpec`, rejecting ``a < 2`` or ``p`` outside (0, 1)."""
    if isinstance(a, bool) or int(a) != a:
        raise DomainError(f"domain size must be an integer, got {a!r}")
    a = int(a)
    if a < 2:
        raise DomainError(f"domain size a must be >= 2, got {a}")
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"up-step probability must lie in (0, 1), got {p}")
    return WalkSpec(a, p)


def validate_reset(
    walk: WalkSpec, sites: Sequence[int], weights: Sequence[float]
) -> ResetSpec:
    """Build a :class:`ResetSpec` for ``walk``.

    Sites are sorted together with their weights. Weights must be
    non-negative and sum to one within ``1e-12``; they are renormalized to an
    exact unit sum afterwards so that decimal approximations of rationals
    (``4/13`` and the like) are accepted.

    Raises
    ------
    DomainError
        On an empty or mismatched list, a boundary or out-of-range site, a
        duplicate site, a negative weight, or a weight sum off by more than
        the tolerance.
    """
    sites = list(sites)
    weights = [float(w) for w in weights]
    if not sites:
        raise DomainError("at least one reset site is required")
    if len(sites) != len(weights):
        raise DomainError(
            f"{len(sites)} sites but {len(weights)} weights were given"
        )
    for z in sites:
        if isinstance(z, bool) or int(z) != z:
            raise DomainError(f"reset site must be an integer, got {z!r}")
        if not (1 <= z <= walk.a - 1):
            raise DomainError(f"reset site {z} is not interior to [0, {walk.a}]")
    sites = [int(z) for z in sites]
    if len(set(sites)) != len(sites):
        raise DomainError(f"duplicate reset sites in {sites}")
    for w in weights:
        if not math.isfinite(w) or w < 0.0:
            raise DomainError(f"reset weights must be finite and >= 0, got {w}")
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"reset weights sum to {total!r}, not 1")
    order = sorted(range(len(sites)), key=sites.__getitem__)
    return ResetSpec(
        tuple(sites[i] for i in order),
        tuple(weights[i] / total for i in order),
    )


def classical_ruin(walk: WalkSpec, z: float) -> float:
    """Ruin probability from ``z`` without resetting.

    ``z`` may be real so that the midpoint ``a/2`` of an odd domain can be
    evaluated by analytic continuation.
    """
    z = float(z)
    a = walk.a
    if not (0.0 <= z <= a):
        raise DomainError(f"starting point {z} outside [0, {a}]")
    if walk.symmetric:
        return 1.0 - z / a
    # (r^z - r^a) / (1 - r^a) via expm1; exponents kept non-positive
    lr = math.log(walk.ratio)
    if lr > 0.0:
        value = math.expm1((z - a) * lr) / math.expm1(-a * lr)
    else:
        value = math.exp(z * lr) * math.expm1((a - z) * lr) / math.expm1(a * lr)
    return min(1.0, max(0.0, value))


def doob_factor(walk: WalkSpec, x: float) -> float:
    """``(q/p)**(x/2)`` evaluated in log space."""
    return math.exp(0.5 * x * math.log(walk.ratio))
