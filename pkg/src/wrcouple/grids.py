"""Uniform time grids for the waveform iteration windows."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of [t0, tf] into n_steps steps."""

    t0: float
    tf: float
    n_steps: int
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError(f"need at least one step, got {self.n_steps}")
        if not self.tf > self.t0:
            raise ValueError(f"empty time window [{self.t0}, {self.tf}]")
        pts = np.linspace(self.t0, self.tf, self.n_steps + 1)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def dt(self) -> float:
        return (self.tf - self.t0) / self.n_steps

    def same_span(self, other: "TimeGrid") -> bool:
        return self.t0 == other.t0 and self.tf == other.tf


def grid_from_dt(t0: float, tf: float, dt: float) -> TimeGrid:
    """Build a grid from a step size that must tile [t0, tf] evenly."""
    span = tf - t0
    n = int(round(span / dt))
    if n < 1 or abs(n * dt - span) > 1e-9 * max(abs(span), 1.0):
        raise ValueError(f"dt={dt} does not evenly divide [{t0}, {tf}]")
    return TimeGrid(t0, tf, n)
