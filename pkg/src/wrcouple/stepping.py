"""One-step Dirichlet/Neumann solvers (implicit Euler and SDIRK2).

The Dirichlet step advances the interior unknowns of one subdomain with
prescribed interface values and returns the discrete interface flux; the
Neumann step advances the full (interior + interface) correction problem
driven by a flux right-hand side.  SDIRK2 is realized as the usual
sequence of implicit-Euler-type stage solves with

    a = 1 - sqrt(2)/2,   stages (a, 0; 1-a, a),   u^{n+1} = U_2.

These functions are the reference path; the waveform solvers run whole
time sweeps through :mod:`wrcouple.kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .assembly import MonolithicOperator, SubdomainOperator
from .grids import TimeGrid
from .transfer import stage_derivative, stage_interp

__all__ = [
    "SDIRK_A", "SdirkCoeffs", "StepResult",
    "euler_dirichlet_step", "euler_neumann_step",
    "sdirk2_dirichlet_step", "sdirk2_neumann_step",
    "monolithic_solve",
]

#: Diagonal coefficient of the two-stage SDIRK2 tableau.
SDIRK_A = 1.0 - 0.5 * math.sqrt(2.0)

INTEGRATORS = ("euler", "sdirk2")


@dataclass(frozen=True)
class SdirkCoeffs:
    a: float = SDIRK_A
    stages: int = 2


@dataclass
class StepResult:
    """Output of one subdomain step.

    Dirichlet steps populate ``flux`` (Euler) or ``stage_fluxes``
    (SDIRK2); Neumann steps populate ``interface_state``.
    """

    interior_state: np.ndarray
    interface_state: np.ndarray | None = None
    flux: np.ndarray | None = None
    stage_fluxes: np.ndarray | None = None

    def __post_init__(self):
        if self.flux is not None and self.interface_state is not None:
            raise ValueError("a step is either a Dirichlet or a Neumann step, not both")


def _as_vec(x, n, what):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != n:
        raise ValueError(f"{what} has length {x.shape[0]}, expected {n}")
    return x


def _check_dt(dt):
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")


def full_matrices(op: SubdomainOperator):
    """The 2x2 block mass/stiffness matrices of the Neumann problem."""
    m = sp.bmat([[op.m_ii, op.m_ig], [op.m_gi, op.m_gg]], format="csr")
    a = sp.bmat([[op.a_ii, op.a_ig], [op.a_gi, op.a_gg]], format="csr")
    return m, a


def _solve(mat, rhs):
    return spla.spsolve(mat.tocsc(), rhs)


def euler_dirichlet_step(op: SubdomainOperator, u_prev, g_prev, g_next, dt) -> StepResult:
    """One implicit Euler step of the Dirichlet problem plus its flux."""
    _check_dt(dt)
    u_prev = _as_vec(u_prev, op.n_interior, "interior state")
    g_prev = _as_vec(g_prev, op.n_interface, "interface data (old)")
    g_next = _as_vec(g_next, op.n_interface, "interface data (new)")

    lhs = op.m_ii / dt + op.a_ii
    rhs = op.m_ii @ u_prev / dt - (op.m_ig / dt + op.a_ig) @ g_next + op.m_ig @ g_prev / dt
    u_new = _solve(lhs, rhs)

    flux = ((op.m_gg / dt + op.a_gg) @ g_next + (op.m_gi / dt + op.a_gi) @ u_new
            - op.m_gg @ g_prev / dt - op.m_gi @ u_prev / dt)
    return StepResult(interior_state=u_new, flux=np.atleast_1d(flux))


def euler_neumann_step(op: SubdomainOperator, psi_prev, flux_rhs, dt) -> StepResult:
    """One implicit Euler step of the Neumann (correction) problem."""
    _check_dt(dt)
    n_tot = op.n_interior + op.n_interface
    psi_prev = _as_vec(psi_prev, n_tot, "correction state")
    flux_rhs = _as_vec(flux_rhs, op.n_interface, "flux right-hand side")

    m, a = full_matrices(op)
    rhs = m @ psi_prev / dt
    rhs[op.n_interior:] += flux_rhs
    psi_new = _solve(m / dt + a, rhs)
    return StepResult(
        interior_state=psi_new[: op.n_interior],
        interface_state=psi_new[op.n_interior:],
    )


def sdirk2_dirichlet_step(op: SubdomainOperator, u_prev, g_prev, g_next, dt) -> StepResult:
    """One SDIRK2 step of the Dirichlet problem with its two stage fluxes.

    Stage interface values come from linear interpolation between g^n and
    g^{n+1}; the trace derivative uses the same forward difference at
    both stages.
    """
    _check_dt(dt)
    u_prev = _as_vec(u_prev, op.n_interior, "interior state")
    g_prev = _as_vec(g_prev, op.n_interface, "interface data (old)")
    g_next = _as_vec(g_next, op.n_interface, "interface data (new)")

    a = SDIRK_A
    adt = a * dt
    g_dot = stage_derivative(g_prev, g_next, dt)
    g_stage = (stage_interp(g_prev, g_next, a), g_next)

    lhs = op.m_ii / adt + op.a_ii
    s_j = u_prev
    stages = []
    for j in range(2):
        rhs = op.m_ii @ s_j / adt - op.m_ig @ g_dot - op.a_ig @ g_stage[j]
        u_j = _solve(lhs, rhs)
        k_j = (u_j - s_j) / adt
        stages.append((u_j, k_j))
        s_j = u_prev + dt * (1.0 - a) * stages[0][1]

    fluxes = np.vstack([
        op.m_gg @ g_dot + op.m_gi @ k_j + op.a_gg @ g_stage[j] + op.a_gi @ u_j
        for j, (u_j, k_j) in enumerate(stages)
    ])
    return StepResult(interior_state=stages[1][0], stage_fluxes=fluxes)


def sdirk2_neumann_step(op: SubdomainOperator, psi_prev, stage_flux_rhs, dt) -> StepResult:
    """One SDIRK2 step of the Neumann problem driven by two stage fluxes."""
    _check_dt(dt)
    n_tot = op.n_interior + op.n_interface
    psi_prev = _as_vec(psi_prev, n_tot, "correction state")
    stage_flux_rhs = np.atleast_2d(np.asarray(stage_flux_rhs, dtype=float))
    if stage_flux_rhs.shape != (2, op.n_interface):
        raise ValueError(f"need 2 stage fluxes of length {op.n_interface}, "
                         f"got shape {stage_flux_rhs.shape}")

    a = SDIRK_A
    adt = a * dt
    m, amat = full_matrices(op)
    lhs = m / adt + amat
    s_j = psi_prev
    k_1 = None
    for j in range(2):
        rhs = m @ s_j / adt
        rhs[op.n_interior:] += stage_flux_rhs[j]
        y_j = _solve(lhs, rhs)
        if j == 0:
            k_1 = (y_j - s_j) / adt
            s_j = psi_prev + dt * (1.0 - a) * k_1
    return StepResult(
        interior_state=y_j[: op.n_interior],
        interface_state=y_j[op.n_interior:],
    )


def monolithic_solve(mono: MonolithicOperator, u0, grid: TimeGrid, integrator: str = "euler") -> np.ndarray:
    """Integrate the glued full-domain system M u' + A u = 0.

    Returns the whole trajectory, shape (n_steps + 1, n_total).
    """
    if integrator not in INTEGRATORS:
        raise ValueError(f"integrator must be one of {INTEGRATORS}, got {integrator!r}")
    u0 = _as_vec(u0, mono.n_total, "initial state")
    dt = grid.dt
    m = mono.mass.tocsc()
    a = mono.stiffness.tocsc()

    out = np.empty((grid.n_steps + 1, mono.n_total))
    out[0] = u0
    if integrator == "euler":
        lu = spla.splu(m / dt + a)
        for n in range(grid.n_steps):
            out[n + 1] = lu.solve(m @ out[n] / dt)
    else:
        adt = SDIRK_A * dt
        lu = spla.splu(m / adt + a)
        for n in range(grid.n_steps):
            s1 = out[n]
            y1 = lu.solve(m @ s1 / adt)
            k1 = (y1 - s1) / adt
            s2 = out[n] + dt * (1.0 - SDIRK_A) * k1
            out[n + 1] = lu.solve(m @ s2 / adt)
    return out
