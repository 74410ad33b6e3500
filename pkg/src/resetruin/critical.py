"""Spectral duality detection and critical (reset-neutral) distributions.

A spectral duality on a set of sites is an involution ``sigma`` with positive,
mode-independent weights ``kappa`` such that ``B_nu(z) = kappa(z) A_nu(sigma(z))``
for every mode. When the pair products ``kappa(z) kappa(sigma(z))`` share a
common value ``K`` and every fixed point of ``sigma`` has ``kappa = sqrt(K)``,
the distributions with ``pi(z) / pi(sigma(z)) = sqrt(kappa(sigma(z)) / kappa(z))``
make ``C(pi, gamma)`` constant in ``gamma`` with value ``1 / (1 + sqrt(K))``.
Weights on fixed points (neutral sites) are free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .core import DomainError, ResetSpec, WalkSpec, validate_reset
from .exact import coupling_constant
from .spectral import decompose

PRODUCT_TOL = 1e-10


class SymmetryError(ValueError):
    """Raised when a site set admits no spectral duality."""


@dataclass(frozen=True)
class DualityCertificate:
    pairing: tuple[tuple[int, int], ...]
    kappa: Mapping[int, float]
    K: float
    neutral_sites: tuple[int, ...]
    h3_ok: bool
    h4_ok: bool

    @property
    def sigma(self) -> dict[int, int]:
        return dict(self.pairing)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Non-trivial pairs, each listed once with the smaller site first."""
        return tuple(sorted({(min(z, w), max(z, w)) for z, w in self.pairing if z != w}))


def _proportional(b: np.ndarray, a: np.ndarray, tol: float) -> float | None:
    """Return ``k > 0`` with ``b = k a`` up to ``tol``, or None.

    Modes with ``|a| <= tol * max|a|`` are excluded from the ratio spread but
    ``b`` must still vanish there.
    """
    a_scale = np.max(np.abs(a))
    b_scale = np.max(np.abs(b))
    if a_scale == 0.0 or b_scale == 0.0:
        return None
    keep = np.abs(a) > tol * a_scale
    ratios = b[keep] / a[keep]
    kappa = float(np.dot(a, b) / np.dot(a, a))
    if kappa <= 0.0:
        return None
    spread = float(np.max(ratios) - np.min(ratios))
    if spread > tol * abs(kappa):
        return None
    if np.max(np.abs(b - kappa * a)) > tol * b_scale:
        return None
    return kappa


def _involutions(candidates: list[list[int]], chosen: list[int | None], i: int):
    """Depth-first search for an involution respecting the candidate lists."""
    n = len(candidates)
    while i < n and chosen[i] is not None:
        i += 1
    if i == n:
        yield list(chosen)
        return
    for j in candidates[i]:
        if j == i:
            chosen[i] = i
            yield from _involutions(candidates, chosen, i + 1)
            chosen[i] = None
        elif chosen[j] is None and i in candidates[j]:
            chosen[i], chosen[j] = j, i
            yield from _involutions(candidates, chosen, i + 1)
            chosen[i] = chosen[j] = None


def detect_duality(
    A: np.ndarray, B: np.ndarray, sites: Sequence[int], tol: float = 1e-9
) -> DualityCertificate | None:
    """Search for a spectral duality among the columns of ``A`` and ``B``.

    ``A`` and ``B`` hold one row per mode and one column per entry of
    ``sites``. Nothing here is specific to the random walk: any pair of
    coefficient matrices may be passed.

    Returns None when no involutive pairing with mode-independent positive
    weights exists.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    sites = [int(z) for z in sites]
    if A.ndim != 2 or A.shape != B.shape:
        raise DomainError(f"A {A.shape} and B {B.shape} must be matrices of equal shape")
    if A.shape[0] < 1 or A.shape[1] != len(sites):
        raise DomainError(
            f"need >= 1 mode and one column per site; got {A.shape} for {len(sites)} sites"
        )
    if len(set(sites)) != len(sites):
        raise DomainError(f"duplicate sites in {sites}")

    m = len(sites)
    weight: dict[tuple[int, int], float] = {}
    candidates: list[list[int]] = []
    for i in range(m):
        row = []
        for j in range(m):
            k = _proportional(B[:, i], A[:, j], tol)
            if k is not None:
                weight[i, j] = k
                row.append(j)
        candidates.append(row)

    sigma = next(_involutions(candidates, [None] * m, 0), None)
    if sigma is None:
        return None

    kappa = {sites[i]: weight[i, sigma[i]] for i in range(m)}
    pairing = tuple((sites[i], sites[sigma[i]]) for i in range(m))
    neutral = tuple(sites[i] for i in range(m) if sigma[i] == i)
    products = [kappa[sites[i]] * kappa[sites[sigma[i]]] for i in range(m) if sigma[i] > i]
    if products:
        K = float(np.mean(products))
        h3_ok = (max(products) - min(products)) <= PRODUCT_TOL * K
    else:
        K = kappa[neutral[0]] ** 2
        h3_ok = True
    root = math.sqrt(K)
    h4_ok = all(abs(kappa[z] - root) <= PRODUCT_TOL * root for z in neutral)
    return DualityCertificate(pairing, kappa, K, neutral, h3_ok, h4_ok)


def walk_certificate(walk: WalkSpec, sites: Sequence[int], tol: float = 1e-9) -> DualityCertificate | None:
    """:func:`detect_duality` on the closed-form coefficients of ``walk``."""
    A, B = decompose(walk).columns(sites)
    return detect_duality(A, B, sites, tol)


def check_symmetry(walk: WalkSpec, sites: Sequence[int]):
    """Split ``sites`` into ``(z, a - z)`` pairs plus an optional midpoint.

    Returns ``(pairs, neutral)`` with ``z < a/2`` first in every pair and
    ``neutral`` either ``a/2`` or None, or None when the set is not closed
    under ``z -> a - z``.
    """
    a = walk.a
    present = set(int(z) for z in sites)
    if any(a - z not in present for z in present):
        return None
    pairs = tuple((z, a - z) for z in sorted(present) if 2 * z < a)
    neutral = a // 2 if (a % 2 == 0 and a // 2 in present) else None
    return pairs, neutral


def invariant_constant(walk: WalkSpec) -> float:
    """``(q/p)**(a/2) / (1 + (q/p)**(a/2))``, the classical midpoint ruin value."""
    half = 0.5 * walk.a * math.log(walk.ratio)
    # logistic in half-log-odds, written to avoid overflow on either side
    if half >= 0.0:
        return 1.0 / (1.0 + math.exp(-half))
    e = math.exp(half)
    return e / (1.0 + e)


@dataclass(frozen=True)
class CriticalFamily:
    """Critical reset distributions on a symmetric site set.

    ``pair_ratios[(z, z')]`` is ``pi(z) / pi(z')`` with ``z < a/2``.
    """

    walk: WalkSpec
    sites: tuple[int, ...]
    pair_ratios: Mapping[tuple[int, int], float]
    neutral_site: int | None
    C_star: float
    certificate: DualityCertificate = field(repr=False)

    def materialize(
        self, neutral_weight: float = 0.0, pair_masses: Sequence[float] | None = None
    ) -> ResetSpec:
        """A concrete member of the family.

        ``neutral_weight`` goes to the neutral site; the rest is split across
        pairs, equally unless ``pair_masses`` (relative, any positive scale)
        is given, and within each pair by its ratio.
        """
        w0 = float(neutral_weight)
        if not (0.0 <= w0 < 1.0):
            raise DomainError(f"neutral weight must lie in [0, 1), got {w0}")
        if w0 > 0.0 and self.neutral_site is None:
            raise DomainError("no neutral site in this configuration to carry weight")
        pairs = sorted(self.pair_ratios)
        if not pairs:
            return validate_reset(self.walk, [self.neutral_site], [1.0])
        if pair_masses is None:
            masses = [1.0] * len(pairs)
        else:
            masses = [float(x) for x in pair_masses]
            if len(masses) != len(pairs) or any(x <= 0 for x in masses):
                raise DomainError(f"need {len(pairs)} positive pair masses, got {pair_masses}")
        total = math.fsum(masses)
        weights: dict[int, float] = {}
        for (z, zp), mass in zip(pairs, masses):
            share = (1.0 - w0) * mass / total
            ratio = self.pair_ratios[z, zp]
            weights[z] = share * ratio / (1.0 + ratio)
            weights[zp] = share / (1.0 + ratio)
        if self.neutral_site is not None:
            weights[self.neutral_site] = w0
        sites = sorted(weights)
        return validate_reset(self.walk, sites, [weights[z] for z in sites])


def critical_family(walk: WalkSpec, sites: Sequence[int], tol: float = 1e-9) -> CriticalFamily:
    """Critical family on ``sites`` built from the detected duality.

    Raises
    ------
    SymmetryError
        If the sites admit no spectral duality, or the duality fails the
        pair-product or neutral-site consistency conditions.
    """
    sites = sorted(int(z) for z in sites)
    validate_reset(walk, sites, [1.0 / len(sites)] * len(sites))
    cert = walk_certificate(walk, sites, tol)
    if cert is None:
        raise SymmetryError(f"sites {sites} admit no spectral duality for a={walk.a}")
    if not (cert.h3_ok and cert.h4_ok):
        raise SymmetryError(f"duality on {sites} is inconsistent (h3={cert.h3_ok}, h4={cert.h4_ok})")
    ratios = {}
    for z, zp in cert.pairs:
        ratios[z, zp] = math.sqrt(cert.kappa[zp] / cert.kappa[z])
    neutral = cert.neutral_sites[0] if cert.neutral_sites else None
    C_star = 1.0 / (1.0 + math.sqrt(cert.K))
    return CriticalFamily(walk, tuple(sites), ratios, neutral, C_star, cert)


def flatness_score(walk: WalkSpec, reset: ResetSpec, gamma_grid: Sequence[float]) -> float:
    """Spread ``max - min`` of ``C(pi, gamma)`` over ``gamma_grid``."""
    grid = list(gamma_grid)
    if len(grid) < 2:
        raise DomainError("flatness needs at least two grid points")
    values = [coupling_constant(walk, reset, g).C for g in grid]
    return max(values) - min(values)
