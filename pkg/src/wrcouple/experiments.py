"""Benchmark harness: runs the comparison studies and writes CSV.

Experiment kinds
----------------
error_study        temporal convergence against a fine monolithic reference,
                   conforming (C-C) and multirate (C-F) grids, dyadic refinement
theta_sweep        measured contraction rate over a range of relaxation parameters
ratio_sweep        multirate rates for varying step-size ratios, theta taken
                   from either side's step
theta_vs_c         closed-form optimal theta across c = dt/dx^2 decades
method_comparison  NNWR vs DNWR iteration counts and wall times

CSV floats carry 17 significant digits so reruns are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .assembly import MeshSpec, assemble_monolithic
from .grids import TimeGrid, grid_from_dt
from .materials import Material
from .solvers import (CouplingConfig, IterationReport, default_initial_condition,
                      resolve_theta, solve, _eval_at)
from .stepping import monolithic_solve
from .theory import theta_limits, theta_opt_1d

KINDS = ("error_study", "theta_sweep", "ratio_sweep", "theta_vs_c", "method_comparison")

CSV_HEADERS = {
    "error_study": "level,dt1,dt2,integrator,error",
    "theta_sweep": "theta,rate,iterations,converged",
    "ratio_sweep": "dt1,dt2,theta_source,rate,iterations",
    "theta_vs_c": "c,theta_opt,theta_limit_temporal,theta_limit_spatial",
    "method_comparison": "method,dt1,dt2,iterations,converged,wall_time_s",
}


@dataclass
class ExperimentSpec:
    """One benchmark run (a row set of the CSV schema for ``kind``)."""

    kind: str
    material_left: Material
    material_right: Material
    dim: int = 1
    dx: float = 0.01
    dt_left: float = 0.1
    dt_right: float = 0.1
    t0: float = 0.0
    t_end: float = 1.0
    theta: float | str = "auto"
    integrator: str = "euler"
    method: str = "nnwr"
    tol: float = 1e-8
    max_iters: int = 200
    out: str = "experiment.csv"
    refinements: int = 3
    reference_dt: float = 1e-3
    theta_span: tuple[float, float] = (0.5, 1.5)
    theta_count: int = 11
    ratio_factors: tuple[float, ...] = (1 / 40, 1 / 20, 1 / 10, 1 / 4, 1 / 2, 1.0)
    backend: str = "auto"
    parallel: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.t_end <= self.t0:
            raise ValueError("empty time window")
        if self.refinements < 0:
            raise ValueError("refinements must be non-negative")
        n = round(1.0 / self.dx)
        if n < 2 or abs(n * self.dx - 1.0) > 1e-9:
            raise ValueError(f"dx={self.dx} must evenly divide the unit subdomain")

    @property
    def mesh(self) -> MeshSpec:
        return MeshSpec(self.dim, round(1.0 / self.dx))


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def error_vs_reference(solution, reference, dx: float) -> float:
    """Discrete L2-in-space error at T_f, scaled by sqrt(dx) per dimension."""
    solution = np.asarray(solution, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if solution.shape != reference.shape:
        raise ValueError(f"shape mismatch: {solution.shape} vs {reference.shape}")
    return float(math.sqrt(dx) * np.linalg.norm(solution - reference))


def _rate_from_report(rep: IterationReport) -> float:
    """Geometric mean of error-contraction ratios, skipping the first two."""
    if rep.converged:
        if rep.iterations < 3:
            return 0.0
        end = np.asarray(rep.endpoint_history)        # rows k = 0..K
        norms = np.linalg.norm(end - end[-1], axis=1)[:-1]  # drop e^K = 0
    else:
        norms = np.asarray(rep.update_norms)
    ratios = []
    for k in range(2, norms.size - 1):
        if norms[k] > 0.0 and np.isfinite(norms[k + 1]):
            ratios.append(norms[k + 1] / norms[k])
    if not ratios:
        return 0.0
    return float(np.exp(np.mean(np.log(ratios))))


def measure_convergence_rate(cfg: CouplingConfig) -> float:
    """Observed contraction rate of the interface error at T_f."""
    return _rate_from_report(solve(cfg))


def _coupling_config(spec: ExperimentSpec, dt1, dt2, theta=None, method=None) -> CouplingConfig:
    return CouplingConfig(
        materials=(spec.material_left, spec.material_right),
        meshes=(spec.mesh, spec.mesh),
        grids=(grid_from_dt(spec.t0, spec.t_end, dt1), grid_from_dt(spec.t0, spec.t_end, dt2)),
        theta=spec.theta if theta is None else theta,
        integrator=spec.integrator,
        method=spec.method if method is None else method,
        tol=spec.tol, max_iters=spec.max_iters,
        backend=spec.backend, parallel=spec.parallel,
    )


def compose_final_state(rep: IterationReport) -> np.ndarray:
    """Full-domain state at T_f in monolithic ordering [I1, Gamma, I2]."""
    return np.concatenate([rep.interior_states[0], rep.traces[0].final_column,
                           rep.interior_states[1]])


def _reference_final_state(spec: ExperimentSpec) -> np.ndarray:
    mono = assemble_monolithic(spec.material_left, spec.material_right, spec.mesh)
    ic = default_initial_condition(spec.dim)
    u0 = _eval_at(ic, mono.coords)
    grid = grid_from_dt(spec.t0, spec.t_end, spec.reference_dt)
    return monolithic_solve(mono, u0, grid, spec.integrator)[-1]


def _run_error_study(spec: ExperimentSpec):
    reference = _reference_final_state(spec)
    rows, lines = [], []
    errors = {"C-C": [], "C-F": []}
    coarse_dts = []
    for level in range(spec.refinements + 1):
        fac = 2**level
        dtc, dtf = spec.dt_left / fac, spec.dt_right / fac
        coarse_dts.append(dtc)
        for mode, (dt1, dt2) in (("C-C", (dtc, dtc)), ("C-F", (dtc, dtf))):
            rep = solve(_coupling_config(spec, dt1, dt2))
            err = error_vs_reference(compose_final_state(rep), reference, spec.dx)
            errors[mode].append(err)
            rows.append((level, dt1, dt2, spec.integrator, err))
            lines.append(f"[error_study] level={level} mode={mode} dt1={dt1:g} dt2={dt2:g} "
                         f"iterations={rep.iterations} error={err:.6e} wall={rep.wall_time:.3f}s")
    slopes = {}
    for mode, errs in errors.items():
        slopes[mode] = float(np.polyfit(np.log(coarse_dts), np.log(errs), 1)[0])
        lines.append(f"[error_study] {mode} fitted log-log slope: {slopes[mode]:.3f}")
    return rows, lines, {"slopes": slopes, "errors": errors, "all_converged": True}


def _run_theta_sweep(spec: ExperimentSpec):
    dt = max(spec.dt_left, spec.dt_right)
    mesh = spec.mesh
    theta_ref = theta_opt_1d(spec.material_left, spec.material_right, dt, mesh.dx, mesh.n_cells - 1)
    thetas = np.linspace(spec.theta_span[0], spec.theta_span[1], spec.theta_count) * theta_ref
    rows, lines = [], []
    all_conv = True
    for theta in thetas:
        rep = solve(_coupling_config(spec, spec.dt_left, spec.dt_right, theta=float(theta)))
        rate = _rate_from_report(rep)
        rows.append((float(theta), rate, rep.iterations, rep.converged))
        all_conv &= rep.converged
        lines.append(f"[theta_sweep] theta={theta:.6e} rate={rate:.4f} "
                     f"iterations={rep.iterations} converged={rep.converged} wall={rep.wall_time:.3f}s")
    return rows, lines, {"all_converged": all_conv}


def _run_ratio_sweep(spec: ExperimentSpec):
    base = spec.dt_left
    pairs = [(base * f, base) for f in spec.ratio_factors]
    pairs += [(base, base * f) for f in reversed(spec.ratio_factors[:-1])]
    mesh = spec.mesh
    rows, lines = [], []
    all_conv = True
    for dt1, dt2 in pairs:
        for source in ("dt1", "dt2"):
            dt_for_theta = dt1 if source == "dt1" else dt2
            theta = theta_opt_1d(spec.material_left, spec.material_right,
                                 dt_for_theta, mesh.dx, mesh.n_cells - 1)
            rep = solve(_coupling_config(spec, dt1, dt2, theta=theta))
            rate = _rate_from_report(rep)
            rows.append((dt1, dt2, source, rate, rep.iterations))
            all_conv &= rep.converged
            lines.append(f"[ratio_sweep] dt1={dt1:g} dt2={dt2:g} theta({source})={theta:.4e} "
                         f"rate={rate:.4f} iterations={rep.iterations} wall={rep.wall_time:.3f}s")
    return rows, lines, {"all_converged": all_conv}


def _run_theta_vs_c(spec: ExperimentSpec):
    mesh = spec.mesh
    lim_t, lim_s = theta_limits(spec.material_left, spec.material_right)
    rows, lines = [], []
    for exp in range(-9, 10):
        dt = 10.0**exp
        c = dt / mesh.dx**2
        theta = theta_opt_1d(spec.material_left, spec.material_right, dt, mesh.dx, mesh.n_cells - 1)
        rows.append((c, theta, lim_t, lim_s))
        lines.append(f"[theta_vs_c] c={c:.3e} theta_opt={theta:.6e}")
    return rows, lines, {"all_converged": True, "limits": (lim_t, lim_s)}


def _run_method_comparison(spec: ExperimentSpec):
    rows, lines = [], []
    all_conv = True
    for method in ("nnwr", "dnwr"):
        theta = spec.theta if method == "nnwr" else 0.5
        rep = solve(_coupling_config(spec, spec.dt_left, spec.dt_right,
                                     theta=theta, method=method))
        rows.append((method, spec.dt_left, spec.dt_right, rep.iterations,
                     rep.converged, rep.wall_time))
        all_conv &= rep.converged
        lines.append(f"[method_comparison] {method} dt1={spec.dt_left:g} dt2={spec.dt_right:g} "
                     f"iterations={rep.iterations} converged={rep.converged} "
                     f"wall={rep.wall_time:.3f}s")
    return rows, lines, {"all_converged": all_conv}


_RUNNERS = {
    "error_study": _run_error_study,
    "theta_sweep": _run_theta_sweep,
    "ratio_sweep": _run_ratio_sweep,
    "theta_vs_c": _run_theta_vs_c,
    "method_comparison": _run_method_comparison,
}


def run_experiment(spec: ExperimentSpec) -> dict:
    """Run one experiment, write its CSV, print the summary, return details."""
    rows, lines, info = _RUNNERS[spec.kind](spec)
    write_csv(spec.out, CSV_HEADERS[spec.kind], rows)
    for line in lines:
        print(line)
    print(f"[{spec.kind}] wrote {len(rows)} rows to {spec.out}")
    info["rows"] = rows
    return info
