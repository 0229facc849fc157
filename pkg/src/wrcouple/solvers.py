"""NNWR and DNWR waveform-relaxation drivers over one time window.

Each iteration re-integrates the whole window on both subdomains,
exchanges interface data (with linear time interpolation between
nonconforming grids), relaxes the interface trace and checks the
update at the synchronization point T_f.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .assembly import MeshSpec, SubdomainOperator, assemble_operator
from .grids import TimeGrid
from .kernels import make_sweeper
from .materials import Material
from .theory import theta_opt_1d
from .transfer import InterfaceTrace, interp_trace, interp_values

#: Update norms beyond this abort the iteration as divergent.
DIVERGENCE_CAP = 1e10

METHODS = ("nnwr", "dnwr")
INTEGRATORS = ("euler", "sdirk2")


def default_initial_condition(dim: int) -> Callable:
    """Smooth compatible default u0: sin(pi*(x+1)/2), times sin(pi*y) in 2D."""
    if dim == 1:
        return lambda x: np.sin(np.pi * (x + 1.0) / 2.0)
    return lambda x, y: np.sin(np.pi * (x + 1.0) / 2.0) * np.sin(np.pi * y)


def _eval_at(func, coords):
    return np.asarray(func(*(coords[:, d] for d in range(coords.shape[1]))), dtype=float)


@dataclass
class CouplingConfig:
    """Everything one waveform solve needs."""

    materials: tuple[Material, Material]
    meshes: tuple[MeshSpec, MeshSpec]
    grids: tuple[TimeGrid, TimeGrid]
    theta: float | str = "auto"
    integrator: str = "euler"
    method: str = "nnwr"
    tol: float = 1e-8
    max_iters: int = 200
    initial_condition: Callable | None = None
    initial_guess: Callable | None = None  # t -> interface values, overrides the default g0
    parallel: bool = False
    backend: str = "auto"

    def __post_init__(self):
        m1, m2 = self.meshes
        g1, g2 = self.grids
        if m1.dim != m2.dim or m1.n_cells != m2.n_cells:
            raise ValueError("subdomain meshes must conform at the interface")
        if not g1.same_span(g2):
            raise ValueError("both time grids must span the same window")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"integrator must be one of {INTEGRATORS}, got {self.integrator!r}")
        if self.theta != "auto":
            theta = float(self.theta)
            if not 0.0 < theta <= 1.0:
                raise ValueError(f"theta must lie in (0, 1], got {theta}")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")

    @property
    def dim(self) -> int:
        return self.meshes[0].dim


@dataclass
class IterationReport:
    """Outcome of one waveform solve."""

    iterations: int
    update_norms: list[float]
    converged: bool
    wall_time: float
    traces: tuple[InterfaceTrace, InterfaceTrace]
    interior_states: tuple[np.ndarray, np.ndarray]
    endpoint_history: list[np.ndarray] = field(repr=False, default_factory=list)
    theta_used: float = float("nan")
    method: str = ""
    integrator: str = ""


def resolve_theta(cfg: CouplingConfig) -> float:
    """Relaxation parameter to run with.

    ``auto`` evaluates the 1D closed-form optimum at the coarser of the
    two time steps (also used as the 2D estimator); for DNWR it falls
    back to the classical 1/2.
    """
    if cfg.theta != "auto":
        return float(cfg.theta)
    if cfg.method == "dnwr":
        return 0.5
    dt = max(cfg.grids[0].dt, cfg.grids[1].dt)
    mesh = cfg.meshes[0]
    return theta_opt_1d(cfg.materials[0], cfg.materials[1], dt, mesh.dx, mesh.n_cells - 1)


def interface_update(g_old: InterfaceTrace, psi_own: InterfaceTrace,
                     psi_other_interp: InterfaceTrace, theta: float) -> InterfaceTrace:
    """Relaxation update g - theta*(psi_own + psi_other), columnwise."""
    if psi_own.grid != g_old.grid or psi_other_interp.grid != g_old.grid:
        raise ValueError("all traces must live on the same time grid")
    vals = g_old.values - theta * (psi_own.values + psi_other_interp.values)
    return InterfaceTrace(grid=g_old.grid, values=vals, owner=g_old.owner)


def termination_check(trace_new: InterfaceTrace, trace_old: InterfaceTrace, tol: float) -> bool:
    """True iff the final-time columns differ by at most tol (Euclidean)."""
    if trace_new.grid != trace_old.grid:
        raise ValueError("traces must live on the same time grid")
    return float(np.linalg.norm(trace_new.final_column - trace_old.final_column)) <= tol


def _initial_trace(grid: TimeGrid, g0: np.ndarray, guess: Callable | None, owner: int) -> InterfaceTrace:
    values = np.empty((g0.size, grid.n_steps + 1))
    if guess is None:
        values[:] = g0[:, None]
    else:
        for i, t in enumerate(grid.points):
            values[:, i] = np.asarray(guess(t), dtype=float).reshape(-1)
        values[:, 0] = g0  # column 0 is the coupling problem's initial data
    return InterfaceTrace(grid=grid, values=values, owner=owner)


def _run_pair(task1, task2, parallel: bool):
    if parallel:
        with ThreadPoolExecutor(max_workers=2) as pool:
            f1 = pool.submit(task1)
            f2 = pool.submit(task2)
            return f1.result(), f2.result()
    return task1(), task2()


def _setup(cfg: CouplingConfig, initial_state):
    op1 = assemble_operator(cfg.materials[0], cfg.meshes[0], "left")
    op2 = assemble_operator(cfg.materials[1], cfg.meshes[1], "right")
    sw1 = make_sweeper(op1, cfg.grids[0].dt, cfg.integrator, cfg.backend)
    sw2 = make_sweeper(op2, cfg.grids[1].dt, cfg.integrator, cfg.backend)
    if initial_state is None:
        ic = cfg.initial_condition or default_initial_condition(cfg.dim)
        u0_1 = _eval_at(ic, op1.interior_coords)
        u0_2 = _eval_at(ic, op2.interior_coords)
        g0 = _eval_at(ic, op1.interface_coords)
    else:
        u0_1, u0_2, g0 = (np.asarray(v, dtype=float) for v in initial_state)
    return op1, op2, sw1, sw2, u0_1, u0_2, g0


def _exchange_flux(f_own, own_grid, f_other, other_grid, n_stages):
    if n_stages == 1:
        return f_own + interp_values(own_grid, other_grid, f_other)
    return np.stack([
        f_own[j] + interp_values(own_grid, other_grid, f_other[j]) for j in range(n_stages)
    ])


def nnwr_solve(cfg: CouplingConfig, initial_state=None) -> IterationReport:
    """Neumann-Neumann waveform relaxation over one window.

    Per iteration: both Dirichlet sweeps (parallelizable), flux exchange
    with time interpolation, both Neumann correction sweeps, relaxation
    update on each grid, termination check at T_f.
    """
    if cfg.method != "nnwr":
        raise ValueError(f"config is for method {cfg.method!r}")
    t_start = time.perf_counter()
    op1, op2, sw1, sw2, u0_1, u0_2, g0 = _setup(cfg, initial_state)
    grid1, grid2 = cfg.grids
    theta = resolve_theta(cfg)
    n_stages = 1 if cfg.integrator == "euler" else 2

    g1 = _initial_trace(grid1, g0, cfg.initial_guess, owner=1)
    g2 = _initial_trace(grid2, g0, cfg.initial_guess, owner=2)
    psi0_1 = np.zeros(op1.n_interior + op1.n_interface)
    psi0_2 = np.zeros(op2.n_interior + op2.n_interface)

    norms: list[float] = []
    endpoints = [g1.final_column.copy()]
    converged = False
    iterations = 0
    for _ in range(cfg.max_iters):
        iterations += 1
        (f1, _), (f2, _) = _run_pair(
            lambda: sw1.dirichlet_sweep(u0_1, g1.values),
            lambda: sw2.dirichlet_sweep(u0_2, g2.values),
            cfg.parallel,
        )
        big_f1 = _exchange_flux(f1, grid1, f2, grid2, n_stages)
        big_f2 = _exchange_flux(f2, grid2, f1, grid1, n_stages)
        (p1, _), (p2, _) = _run_pair(
            lambda: sw1.neumann_sweep(psi0_1, big_f1),
            lambda: sw2.neumann_sweep(psi0_2, big_f2),
            cfg.parallel,
        )
        psi1 = InterfaceTrace(grid1, p1, owner=1)
        psi2 = InterfaceTrace(grid2, p2, owner=2)
        g1_new = interface_update(g1, psi1, interp_trace(grid1, psi2), theta)
        g2_new = interface_update(g2, psi2, interp_trace(grid2, psi1), theta)

        norm = float(np.linalg.norm(g1_new.final_column - g1.final_column))
        norms.append(norm)
        endpoints.append(g1_new.final_column.copy())
        g1, g2 = g1_new, g2_new
        if norm <= cfg.tol:
            converged = True
            break
        if not np.isfinite(norm) or norm > DIVERGENCE_CAP:
            break

    (_, u1), (_, u2) = _run_pair(
        lambda: sw1.dirichlet_sweep(u0_1, g1.values),
        lambda: sw2.dirichlet_sweep(u0_2, g2.values),
        cfg.parallel,
    )
    return IterationReport(
        iterations=iterations, update_norms=norms, converged=converged,
        wall_time=time.perf_counter() - t_start,
        traces=(g1, g2), interior_states=(u1, u2),
        endpoint_history=endpoints, theta_used=theta,
        method="nnwr", integrator=cfg.integrator,
    )


def dnwr_solve(cfg: CouplingConfig, initial_state=None) -> IterationReport:
    """Dirichlet-Neumann waveform relaxation over one window.

    Sequential by construction: the Dirichlet sweep on Omega1 feeds its
    (negated) flux to the Neumann sweep on Omega2, whose interface trace
    is relaxed against the previous one and interpolated back.
    """
    if cfg.method != "dnwr":
        raise ValueError(f"config is for method {cfg.method!r}")
    t_start = time.perf_counter()
    op1, op2, sw1, sw2, u0_1, u0_2, g0 = _setup(cfg, initial_state)
    grid1, grid2 = cfg.grids
    theta = resolve_theta(cfg)
    n_stages = 1 if cfg.integrator == "euler" else 2

    g1 = _initial_trace(grid1, g0, cfg.initial_guess, owner=1)
    g2 = _initial_trace(grid2, g0, cfg.initial_guess, owner=2)
    u2_full0 = np.concatenate([u0_2, g0])

    norms: list[float] = []
    endpoints = [g1.final_column.copy()]
    converged = False
    iterations = 0
    u2 = None
    for _ in range(cfg.max_iters):
        iterations += 1
        f1, _ = sw1.dirichlet_sweep(u0_1, g1.values)
        if n_stages == 1:
            forcing = -interp_values(grid2, grid1, f1)
        else:
            forcing = -np.stack([interp_values(grid2, grid1, f1[j]) for j in range(2)])
        u2_gamma, u2_state = sw2.neumann_sweep(u2_full0, forcing)
        u2 = u2_state

        g2_vals = theta * u2_gamma + (1.0 - theta) * g2.values
        g2_new = InterfaceTrace(grid2, g2_vals, owner=2)
        g1_new = interp_trace(grid1, g2_new)
        g1_new.owner = 1

        norm = float(np.linalg.norm(g1_new.final_column - g1.final_column))
        norms.append(norm)
        endpoints.append(g1_new.final_column.copy())
        g1, g2 = g1_new, g2_new
        if norm <= cfg.tol:
            converged = True
            break
        if not np.isfinite(norm) or norm > DIVERGENCE_CAP:
            break

    _, u1 = sw1.dirichlet_sweep(u0_1, g1.values)
    return IterationReport(
        iterations=iterations, update_norms=norms, converged=converged,
        wall_time=time.perf_counter() - t_start,
        traces=(g1, g2), interior_states=(u1, u2[: op2.n_interior]),
        endpoint_history=endpoints, theta_used=theta,
        method="dnwr", integrator=cfg.integrator,
    )


def solve(cfg: CouplingConfig, initial_state=None) -> IterationReport:
    """Dispatch on cfg.method."""
    if cfg.method == "nnwr":
        return nnwr_solve(cfg, initial_state)
    return dnwr_solve(cfg, initial_state)


def solve_windows(cfg: CouplingConfig, n_windows: int) -> list[IterationReport]:
    """Split [T0, Tf] into equal macro steps, restarting from each final state."""
    if n_windows < 1:
        raise ValueError("need at least one window")
    grid1, grid2 = cfg.grids
    if grid1.n_steps % n_windows or grid2.n_steps % n_windows:
        raise ValueError("window count must divide both step counts")
    edges = np.linspace(grid1.t0, grid1.tf, n_windows + 1)
    reports = []
    state = None
    for w in range(n_windows):
        sub = CouplingConfig(
            materials=cfg.materials, meshes=cfg.meshes,
            grids=(TimeGrid(edges[w], edges[w + 1], grid1.n_steps // n_windows),
                   TimeGrid(edges[w], edges[w + 1], grid2.n_steps // n_windows)),
            theta=cfg.theta, integrator=cfg.integrator, method=cfg.method,
            tol=cfg.tol, max_iters=cfg.max_iters,
            initial_condition=cfg.initial_condition, initial_guess=None,
            parallel=cfg.parallel, backend=cfg.backend,
        )
        rep = solve(sub, initial_state=state)
        reports.append(rep)
        state = (rep.interior_states[0], rep.interior_states[1], rep.traces[0].final_column)
    return reports
