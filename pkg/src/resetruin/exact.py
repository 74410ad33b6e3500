"""Discounted first-cycle probabilities and the renewal closed form.

For a starting site ``z`` let ``u(z)`` be the probability of ruin before the
first reset and ``s(z)`` the probability of absorption (at either end) before
the first reset. Both satisfy

    x(z) = (1 - gamma) * (p * x(z+1) + q * x(z-1))

on the interior, with ``u(0) = s(0) = s(a) = 1`` and ``u(a) = 0``. Renewal
at reset times then gives ``q_z = u(z) + (1 - s(z)) * C`` where the coupling
constant ``C = sum(pi u) / sum(pi s)`` is the only place the reset
distribution enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import ConvergenceError, DomainError, ResetSpec, WalkSpec


@dataclass(frozen=True)
class DiscountedSolutions:
    """Arrays ``u`` and ``s`` indexed ``0..a`` (boundaries stored)."""

    gamma: float
    u: np.ndarray
    s: np.ndarray
    iterations: int | None = None

    @property
    def v(self) -> np.ndarray:
        """Probability of escape at ``a`` before the first reset."""
        return self.s - self.u


@dataclass(frozen=True)
class CouplingBreakdown:
    u_bar: float
    s_bar: float
    C: float


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"resetting rate must lie in (0, 1), got {gamma}")
    return gamma


def _frozen(*arrays):
    for arr in arrays:
        arr.setflags(write=False)
    return arrays


def thomas(lower, diag, upper, rhs):
    """Solve a tridiagonal system by forward elimination and back substitution.

    ``lower[0]`` and ``upper[-1]`` are ignored. ``rhs`` may be 2-D with one
    right-hand side per column. No pivoting is done, so the matrix must be
    diagonally dominant.
    """
    n = len(diag)
    c = np.empty(n)
    d = np.array(rhs, dtype=float)
    b = diag[0]
    c[0] = upper[0] / b if n > 1 else 0.0
    d[0] = d[0] / b
    for k in range(1, n):
        b = diag[k] - lower[k] * c[k - 1]
        c[k] = upper[k] / b if k < n - 1 else 0.0
        d[k] = (d[k] - lower[k] * d[k - 1]) / b
    for k in range(n - 2, -1, -1):
        d[k] = d[k] - c[k] * d[k + 1]
    return d


def _boundary_rhs(walk: WalkSpec, gamma: float) -> np.ndarray:
    n = walk.a - 1
    g = 1.0 - gamma
    rhs = np.zeros((n, 2))
    rhs[0, 0] = g * walk.q  # u: flux into 0
    rhs[0, 1] = g * walk.q  # s: flux into 0 ...
    rhs[-1, 1] += g * walk.p  # ... plus flux into a
    return rhs


def _assemble(walk: WalkSpec, gamma: float, interior: np.ndarray) -> DiscountedSolutions:
    a = walk.a
    u = np.empty(a + 1)
    s = np.empty(a + 1)
    u[0], u[a] = 1.0, 0.0
    s[0], s[a] = 1.0, 1.0
    u[1:a] = interior[:, 0]
    s[1:a] = interior[:, 1]
    return u, s


def solve_discounted(walk: WalkSpec, gamma: float) -> DiscountedSolutions:
    """Solve for ``u`` and ``s`` by direct tridiagonal elimination.

    The system is strictly diagonally dominant because the off-diagonal row
    sum is ``1 - gamma < 1``, so elimination without pivoting is stable.
    """
    gamma = _check_gamma(gamma)
    u, s = _solve_cached(walk, gamma)
    return DiscountedSolutions(gamma, u, s)


@lru_cache(maxsize=4096)
def _solve_cached(walk: WalkSpec, gamma: float):
    n = walk.a - 1
    g = 1.0 - gamma
    lower = np.full(n, -g * walk.q)
    upper = np.full(n, -g * walk.p)
    diag = np.ones(n)
    interior = thomas(lower, diag, upper, _boundary_rhs(walk, gamma))
    return _frozen(*_assemble(walk, gamma, interior))


def solve_discounted_iterative(
    walk: WalkSpec, gamma: float, tol: float = 1e-12, max_iter: int = 10_000
) -> DiscountedSolutions:
    """Jacobi fixed-point iteration of the two recurrences.

    Starts from zero interior data and updates all sites simultaneously.
    Stops at the first sweep whose largest interior change is below ``tol``;
    ``iterations`` on the result counts sweeps including that last one.
    """
    gamma = _check_gamma(gamma)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise DomainError(f"max_iter must be >= 1, got {max_iter}")
    a = walk.a
    g = 1.0 - gamma
    x = np.zeros((a + 1, 2))
    x[0] = 1.0
    x[a] = (0.0, 1.0)
    for it in range(1, max_iter + 1):
        new = g * (walk.p * x[2:] + walk.q * x[:-2])
        delta = np.max(np.abs(new - x[1:-1]))
        x[1:-1] = new
        if delta < tol:
            u, s = x[:, 0].copy(), x[:, 1].copy()
            _frozen(u, s)
            return DiscountedSolutions(gamma, u, s, iterations=it)
    raise ConvergenceError(
        f"no convergence to {tol} within {max_iter} sweeps "
        f"(a={a}, p={walk.p}, gamma={gamma}); last update {delta:.3e}"
    )


def recurrence_residual(walk: WalkSpec, sol: DiscountedSolutions) -> float:
    """Largest interior residual of either recurrence."""
    g = 1.0 - sol.gamma
    worst = 0.0
    for x in (sol.u, sol.s):
        r = x[1:-1] - g * (walk.p * x[2:] + walk.q * x[:-2])
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


def _site_index(reset: ResetSpec) -> np.ndarray:
    return np.asarray(reset.sites, dtype=int)


def coupling_from(sol: DiscountedSolutions, reset: ResetSpec) -> CouplingBreakdown:
    idx = _site_index(reset)
    w = np.asarray(reset.weights)
    u_bar = math.fsum(w * sol.u[idx])
    s_bar = math.fsum(w * sol.s[idx])
    assert s_bar > 0.0, "s_bar must be positive for interior reset sites"
    return CouplingBreakdown(u_bar, s_bar, u_bar / s_bar)


def coupling_constant(walk: WalkSpec, reset: ResetSpec, gamma: float) -> CouplingBreakdown:
    """Weighted first-cycle averages and their ratio ``C(pi, gamma)``."""
    return coupling_from(solve_discounted(walk, gamma), reset)


def _check_z(walk: WalkSpec, z: int) -> int:
    if isinstance(z, bool) or int(z) != z or not (0 <= z <= walk.a):
        raise DomainError(f"starting site {z!r} outside 0..{walk.a}")
    return int(z)


def ruin_profile(walk: WalkSpec, reset: ResetSpec, gamma: float) -> np.ndarray:
    """Ruin probability for every starting site ``0..a``."""
    sol = solve_discounted(walk, gamma)
    C = coupling_from(sol, reset).C
    return sol.u + (1.0 - sol.s) * C


def escape_profile(walk: WalkSpec, reset: ResetSpec, gamma: float) -> np.ndarray:
    sol = solve_discounted(walk, gamma)
    cb = coupling_from(sol, reset)
    idx = _site_index(reset)
    v_bar = math.fsum(np.asarray(reset.weights) * sol.v[idx])
    return sol.v + (1.0 - sol.s) * (v_bar / cb.s_bar)


def ruin_probability(walk: WalkSpec, reset: ResetSpec, gamma: float, z: int) -> float:
    """``q_z(gamma) = u(z) + (1 - s(z)) * C(pi, gamma)``."""
    z = _check_z(walk, z)
    return float(ruin_profile(walk, reset, gamma)[z])


def escape_probability(walk: WalkSpec, reset: ResetSpec, gamma: float, z: int) -> float:
    """Probability of absorption at ``a``, from the escape analogue of ``u``."""
    z = _check_z(walk, z)
    return float(escape_profile(walk, reset, gamma)[z])
