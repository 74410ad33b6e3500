"""Closed-form spectral decomposition of the absorbed biased walk.

Conjugating the sub-stochastic transition matrix by ``h(x) = (q/p)**(x/2)``
gives a symmetric tridiagonal matrix with off-diagonal ``sqrt(pq)``. Its
eigenpairs are ``lambda_nu = 2 sqrt(pq) cos(pi nu / a)`` and the discrete sine
vectors ``sqrt(2/a) sin(pi nu x / a)``, ``nu = 1..a-1``. The boundary-flux
coefficients ``A_nu(z)`` (ruin channel) and ``B_nu(z)`` (escape channel)
together with the transfer kernel reproduce ``u`` and ``s``:

    u(z) = sum_nu A_nu(z) f_nu(gamma)
    s(z) = sum_nu (A_nu(z) + B_nu(z)) f_nu(gamma)

with ``f_nu(gamma) = sqrt(pq) (1 - gamma) / (1 - lambda_nu (1 - gamma))``.

Mode indices are 1-based in the public functions; arrays are stored
0-based with row ``nu - 1`` and column ``z - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DomainError, RangeError, WalkSpec

# exp() overflows just past 709
_MAX_LOG_MAGNITUDE = 700.0


@dataclass(frozen=True)
class SpectralDecomposition:
    walk: WalkSpec
    lambdas: np.ndarray  # (a-1,)
    A: np.ndarray  # (a-1 modes, a-1 sites)
    B: np.ndarray
    h: np.ndarray  # Doob weights at x = 1..a-1
    psi: np.ndarray  # psi[nu-1, x-1]

    @property
    def n_modes(self) -> int:
        return self.walk.a - 1

    def columns(self, sites: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
        """``A`` and ``B`` restricted to ``sites`` (shape modes x sites)."""
        idx = np.asarray(sites, dtype=int) - 1
        return self.A[:, idx], self.B[:, idx]


def decompose(walk: WalkSpec) -> SpectralDecomposition:
    a, p, q = walk.a, walk.p, walk.q
    log_r = math.log(q / p)
    if a * abs(log_r) > _MAX_LOG_MAGNITUDE:
        raise RangeError(
            f"Doob factors (q/p)^(a) overflow double range for a={a}, p={p}"
        )
    nu = np.arange(1, a)[:, None]
    x = np.arange(1, a)[None, :]
    lambdas = 2.0 * math.sqrt(p * q) * np.cos(np.pi * np.arange(1, a) / a)
    psi = math.sqrt(2.0 / a) * np.sin(np.pi * nu * x / a)
    h = np.exp(0.5 * np.arange(1, a) * log_r)
    edge = np.sin(np.pi * nu / a)
    A = (2.0 / a) * np.exp(0.5 * x * log_r) * np.sin(np.pi * nu * x / a) * edge
    B = (2.0 / a) * np.exp(-0.5 * (a - x) * log_r) * np.sin(np.pi * nu * (a - x) / a) * edge
    for arr in (lambdas, psi, h, A, B):
        arr.setflags(write=False)
    return SpectralDecomposition(walk, lambdas, A, B, h, psi)


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"resetting rate must lie in (0, 1), got {gamma}")
    return gamma


def transfer_all(decomp: SpectralDecomposition, gamma: float) -> np.ndarray:
    """Transfer kernel for every mode at once."""
    gamma = _check_gamma(gamma)
    w = 1.0 - gamma
    walk = decomp.walk
    return math.sqrt(walk.p * walk.q) * w / (1.0 - decomp.lambdas * w)


def transfer(decomp: SpectralDecomposition, nu: int, gamma: float) -> float:
    """Weight of mode ``nu`` in the discounted first-passage sums.

    Summing ``sqrt(pq) * lambda**(k-1) * (1-gamma)**k`` over ``k >= 1``. The
    denominator is at least ``1 - |lambda_nu| > 0`` on the whole range.
    """
    if not (1 <= nu <= decomp.n_modes):
        raise DomainError(f"mode index {nu} outside 1..{decomp.n_modes}")
    return float(transfer_all(decomp, gamma)[nu - 1])


def _check_site(decomp: SpectralDecomposition, z: int) -> int:
    if not (1 <= z <= decomp.walk.a - 1):
        raise DomainError(f"site {z} is not interior to [0, {decomp.walk.a}]")
    return int(z)


def spectral_u(decomp: SpectralDecomposition, z: int, gamma: float) -> float:
    z = _check_site(decomp, z)
    f = transfer_all(decomp, gamma)
    return math.fsum(decomp.A[:, z - 1] * f)


def spectral_s(decomp: SpectralDecomposition, z: int, gamma: float) -> float:
    z = _check_site(decomp, z)
    f = transfer_all(decomp, gamma)
    return math.fsum((decomp.A[:, z - 1] + decomp.B[:, z - 1]) * f)


def spectral_profiles(decomp: SpectralDecomposition, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """``u`` and ``s`` at every interior site, as arrays indexed ``z - 1``."""
    f = transfer_all(decomp, gamma)
    u = f @ decomp.A
    s = f @ (decomp.A + decomp.B)
    return u, s


def duality_residual(decomp: SpectralDecomposition, z: int) -> float:
    """``max_nu |B_nu(z) - (p/q)**(a-z) * A_nu(a-z)|``."""
    z = _check_site(decomp, z)
    walk = decomp.walk
    a = walk.a
    factor = math.exp((a - z) * math.log(walk.p / walk.q))
    return float(np.max(np.abs(decomp.B[:, z - 1] - factor * decomp.A[:, a - z - 1])))


def rank_check(decomp: SpectralDecomposition, sites: Sequence[int]) -> bool:
    """Whether the columns ``A[:, sites]`` have full numerical rank.

    Singular values below ``s_max * len(sites) * 1e-12`` count as zero.
    """
    sites = list(sites)
    if not sites:
        raise DomainError("site list is empty")
    if len(set(sites)) != len(sites):
        raise DomainError(f"duplicate sites in {sites}")
    if len(sites) > decomp.n_modes:
        raise DomainError(f"{len(sites)} sites exceed the {decomp.n_modes} interior sites")
    for z in sites:
        _check_site(decomp, z)
    cols = decomp.A[:, np.asarray(sites) - 1]
    sv = np.linalg.svd(cols, compute_uv=False)
    cutoff = sv[0] * len(sites) * 1e-12
    return int(np.sum(sv > cutoff)) == len(sites)
