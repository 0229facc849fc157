"""Time-sweep kernels: compiled extension if available, scipy fallback.

The compiled backend covers the 1D tridiagonal case; 2D problems always
run through the scipy backend.  Set ``WRCOUPLE_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _sweeps  # noqa: F401
    from .compiled import CompiledSweeper
    _HAVE_COMPILED = True
except ImportError:
    CompiledSweeper = None
    _HAVE_COMPILED = False

BACKENDS = ("auto", "compiled", "python")


def compiled_available() -> bool:
    return _HAVE_COMPILED


def default_backend() -> str:
    if os.environ.get("WRCOUPLE_PURE_PYTHON"):
        return "python"
    return "compiled" if _HAVE_COMPILED else "python"


def make_sweeper(op, dt, integrator, backend: str = "auto"):
    """Build the window-sweep engine for one subdomain."""
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
    if backend == "auto":
        backend = default_backend() if op.mesh.dim == 1 else "python"
    if backend == "compiled":
        if not _HAVE_COMPILED:
            raise RuntimeError("compiled kernels are not built; reinstall or use backend='python'")
        return CompiledSweeper(op, dt, integrator)
    return pure.PureSweeper(op, dt, integrator)
