"""Transfer of interface traces between nonconforming time grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import TimeGrid


@dataclass
class InterfaceTrace:
    """Interface values on one time grid: s spatial nodes x (n_steps+1) times.

    Column 0 holds the values at T0 (the initial interface data of the
    coupling problem).
    """

    grid: TimeGrid
    values: np.ndarray
    owner: int | None = None

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.values.shape[1] != self.grid.n_steps + 1:
            raise ValueError(
                f"trace has {self.values.shape[1]} columns, grid wants {self.grid.n_steps + 1}"
            )

    @property
    def final_column(self) -> np.ndarray:
        return self.values[:, -1]


def interp_values(target_grid: TimeGrid, source_grid: TimeGrid, values: np.ndarray) -> np.ndarray:
    """Piecewise-linear interpolation of trace columns onto another grid.

    Uniform grids let us find the bracketing source subinterval by index
    arithmetic (clamped at the last interval) instead of searching.
    """
    if not target_grid.same_span(source_grid):
        raise ValueError("time grids must span the same window")
    values = np.atleast_2d(values)
    if target_grid.n_steps == source_grid.n_steps:
        return values.copy()
    t = target_grid.points
    dt_src = source_grid.dt
    j = np.floor((t - source_grid.t0) / dt_src).astype(int)
    np.clip(j, 0, source_grid.n_steps - 1, out=j)
    w = (t - source_grid.points[j]) / dt_src
    np.clip(w, 0.0, 1.0, out=w)
    return values[:, j] * (1.0 - w) + values[:, j + 1] * w


def interp_trace(target_grid: TimeGrid, source: InterfaceTrace) -> InterfaceTrace:
    """Interpolate an interface trace onto ``target_grid``."""
    vals = interp_values(target_grid, source.grid, source.values)
    return InterfaceTrace(grid=target_grid, values=vals, owner=source.owner)


def stage_interp(g_prev, g_next, a: float):
    """Interface value at the intermediate stage abscissa t_n + a*dt."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"stage weight must lie in [0, 1], got {a}")
    return g_prev + a * (g_next - g_prev)


def stage_derivative(g_prev, g_next, dt: float):
    """Forward-difference time derivative of the interface trace, shared by both stages."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    return (g_next - g_prev) / dt
