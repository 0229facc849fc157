"""Multirate Neumann-Neumann / Dirichlet-Neumann waveform relaxation.

Solvers for two heterogeneous coupled heat equations on [-1,0] / [0,1]
(times [0,1] in 2D): P1 finite elements in space, implicit Euler or
SDIRK2 in time, possibly different time steps per subdomain, plus the
closed-form convergence theory for picking the relaxation parameter.
"""

from .assembly import (MeshSpec, MonolithicOperator, SubdomainOperator,
                       assemble_1d, assemble_2d, assemble_monolithic, assemble_operator)
from .grids import TimeGrid, grid_from_dt
from .kernels import compiled_available, default_backend
from .materials import MATERIALS, Material, material_lookup
from .solvers import (CouplingConfig, IterationReport, default_initial_condition,
                      dnwr_solve, interface_update, nnwr_solve, resolve_theta, solve,
                      solve_windows, termination_check)
from .stepping import (SDIRK_A, SdirkCoeffs, StepResult, euler_dirichlet_step,
                       euler_neumann_step, monolithic_solve, sdirk2_dirichlet_step,
                       sdirk2_neumann_step)
from .theory import (RatePrediction, schur_complement_1d, schur_complement_S, s_sum,
                     sigma_rate, sin2_sum, theta_limits, theta_opt_1d)
from .transfer import (InterfaceTrace, interp_trace, interp_values, stage_derivative,
                       stage_interp)
from .experiments import (ExperimentSpec, error_vs_reference, measure_convergence_rate,
                          run_experiment)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Active sweep backend ("compiled" or "python")."""
    return default_backend()
