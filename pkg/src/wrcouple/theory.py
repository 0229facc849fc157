"""Convergence theory: Schur complements, iteration matrix, optimal theta.

The interface iteration of the relaxed Neumann-Neumann waveform method
(implicit Euler, conforming grids, single step) is governed by

    Sigma = I - theta * (2 I + S1^{-1} S2 + S2^{-1} S1),

with S_m the interface Schur complement of the shifted operator
M/dt + A.  In 1D everything collapses to scalars and the optimal theta
has a closed form; its c -> 0 / c -> infinity limits (c = dt/dx^2)
depend only on the volumetric heat capacities / heat conductivities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from .assembly import SubdomainOperator
from .materials import Material

#: Dense eigensolve below this interface size, power iteration above.
_DENSE_EIG_LIMIT = 64


@dataclass(frozen=True)
class RatePrediction:
    """Spectral radius of the interface iteration matrix."""

    sigma_radius: float
    theta_used: float
    dt: float
    dx: float
    c: float
    dim: int
    materials: tuple[str, str]


def sin2_sum(n_interior: int) -> float:
    """Numerical value of sum_i sin^2(i*pi*dx); identity: equals (N+1)/2."""
    if n_interior < 1:
        raise ValueError("need at least one interior node")
    dx = 1.0 / (n_interior + 1)
    i = np.arange(1, n_interior + 1)
    return float(np.sum(np.sin(i * np.pi * dx) ** 2))


def s_sum(material: Material, dt: float, dx: float, n_interior: int) -> float:
    """Eigenvalue-weighted sine sum entering the 1D Schur complement.

    Evaluated in terms of c = dt/dx^2, which stays well-scaled in both
    asymptotic regimes.
    """
    if n_interior < 1:
        raise ValueError("need at least one interior node")
    if abs(dx * (n_interior + 1) - 1.0) > 1e-12:
        raise ValueError(f"dx={dx} inconsistent with N={n_interior} (need dx = 1/(N+1))")
    lam, alpha = material.lambda_cond, material.alpha
    c = dt / dx**2
    i = np.arange(1, n_interior + 1)
    angles = i * np.pi * dx
    denom = 2.0 * alpha + 6.0 * lam * c + (alpha - 6.0 * lam * c) * np.cos(angles)
    return float(np.sum(3.0 * dt * np.sin(angles) ** 2 / denom))


def _schur_proxy(material: Material, dt: float, dx: float, n_interior: int) -> float:
    # proportional to the 1D Schur complement: S = proxy / (18 dt^2)
    lam, alpha = material.lambda_cond, material.alpha
    c = dt / dx**2
    sm = s_sum(material, dt, dx, n_interior)
    return 6.0 * dt * (alpha + 3.0 * lam * c) - dx * (alpha - 6.0 * lam * c) ** 2 * sm


def schur_complement_1d(material: Material, dt: float, dx: float, n_interior: int) -> float:
    """Closed-form 1D interface Schur complement of M/dt + A."""
    return _schur_proxy(material, dt, dx, n_interior) / (18.0 * dt**2)


def schur_complement_S(op: SubdomainOperator, dt: float) -> np.ndarray:
    """Matrix Schur complement of the shifted subdomain operator, dense (s, s)."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    k_ii = (op.m_ii / dt + op.a_ii).tocsc()
    c_ig = (op.m_ig / dt + op.a_ig).toarray()
    c_gi = (op.m_gi / dt + op.a_gi).toarray()
    gg = (op.m_gg / dt + op.a_gg).toarray()
    x = spla.splu(k_ii).solve(c_ig)
    return gg - c_gi @ x


def theta_opt_1d(mat1: Material, mat2: Material, dt: float, dx: float, n_interior: int) -> float:
    """Closed-form optimal relaxation parameter, 1/(2 + S2/S1 + S1/S2)."""
    p1 = _schur_proxy(mat1, dt, dx, n_interior)
    p2 = _schur_proxy(mat2, dt, dx, n_interior)
    q = p2 / p1
    return 1.0 / (2.0 + q + 1.0 / q)


def theta_limits(mat1: Material, mat2: Material) -> tuple[float, float]:
    """(temporal, spatial) asymptotes of the optimal relaxation parameter."""
    a1, a2 = mat1.alpha, mat2.alpha
    l1, l2 = mat1.lambda_cond, mat2.lambda_cond
    return a1 * a2 / (a1 + a2) ** 2, l1 * l2 / (l1 + l2) ** 2


def _power_radius(mat: np.ndarray, tol: float = 1e-10, max_iter: int = 10000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(mat.shape[0])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = mat @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0
        x = y / ny
        if abs(ny - lam) <= tol * max(ny, 1.0):
            return ny
        lam = ny
    return lam


def iteration_matrix(op1: SubdomainOperator, op2: SubdomainOperator, dt: float, theta: float) -> np.ndarray:
    """Interface iteration matrix Sigma for the relaxed two-sided correction."""
    s1 = schur_complement_S(op1, dt)
    s2 = schur_complement_S(op2, dt)
    s = s1.shape[0]
    eye = np.eye(s)
    cross = np.linalg.solve(s1, s2) + np.linalg.solve(s2, s1)
    return eye - theta * (2.0 * eye + cross)


def sigma_rate(op1: SubdomainOperator, op2: SubdomainOperator, dt: float, theta: float) -> RatePrediction:
    """Spectral radius of Sigma (modulus in 1D, dominant eigenvalue in 2D)."""
    sigma = iteration_matrix(op1, op2, dt, theta)
    if sigma.shape[0] <= _DENSE_EIG_LIMIT:
        radius = float(np.max(np.abs(np.linalg.eigvals(sigma))))
    else:
        radius = _power_radius(sigma)
    dx = op1.mesh.dx
    return RatePrediction(
        sigma_radius=radius, theta_used=theta, dt=dt, dx=dx, c=dt / dx**2,
        dim=op1.mesh.dim, materials=(op1.material.name, op2.material.name),
    )
