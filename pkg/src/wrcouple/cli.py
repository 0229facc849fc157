"""Command-line benchmark front end.

    wrcouple run --experiment <kind> ...    run a study, write CSV
    wrcouple theta ...                      print the optimal relaxation parameter

Exit codes: 0 success, 2 some solver run did not converge, 1 invalid input.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import KINDS, ExperimentSpec, run_experiment
from .materials import material_lookup
from .theory import theta_limits, theta_opt_1d


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wrcouple",
                                     description="Waveform-relaxation coupling benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment and write CSV")
    run.add_argument("--experiment", required=True, choices=KINDS)
    run.add_argument("--material-left", default="air")
    run.add_argument("--material-right", default="steel")
    run.add_argument("--dim", type=int, default=1, choices=(1, 2))
    run.add_argument("--dx", type=float, default=0.01)
    run.add_argument("--dt-left", type=float, default=0.1)
    run.add_argument("--dt-right", type=float, default=0.1)
    run.add_argument("--t0", type=float, default=0.0)
    run.add_argument("--t-end", type=float, default=1.0)
    run.add_argument("--theta", default="auto")
    run.add_argument("--integrator", default="euler", choices=("euler", "sdirk2"))
    run.add_argument("--method", default="nnwr", choices=("nnwr", "dnwr"))
    run.add_argument("--tol", type=float, default=1e-8)
    run.add_argument("--max-iters", type=int, default=200)
    run.add_argument("--out", default="experiment.csv")
    run.add_argument("--refinements", type=int, default=3)
    run.add_argument("--windows", type=int, default=1,
                     help="split the time window into this many macro steps")

    theta = sub.add_parser("theta", help="print theta_opt and its asymptotic limits")
    theta.add_argument("--material-left", required=True)
    theta.add_argument("--material-right", required=True)
    theta.add_argument("--dx", type=float, required=True)
    theta.add_argument("--dt", type=float, required=True)
    return parser


def _parse_theta(raw: str):
    if raw == "auto":
        return "auto"
    return float(raw)


def _cmd_run(args) -> int:
    if args.windows > 1:
        return _run_windows(args)
    spec = ExperimentSpec(
        kind=args.experiment,
        material_left=material_lookup(args.material_left),
        material_right=material_lookup(args.material_right),
        dim=args.dim, dx=args.dx,
        dt_left=args.dt_left, dt_right=args.dt_right,
        t0=args.t0, t_end=args.t_end,
        theta=_parse_theta(args.theta),
        integrator=args.integrator, method=args.method,
        tol=args.tol, max_iters=args.max_iters,
        out=args.out, refinements=args.refinements,
    )
    info = run_experiment(spec)
    return 0 if info.get("all_converged", True) else 2


def _run_windows(args) -> int:
    # macro-step loop: each window restarts from the previous final state
    from .grids import grid_from_dt
    from .solvers import CouplingConfig, solve_windows
    from .assembly import MeshSpec

    mesh = MeshSpec(args.dim, round(1.0 / args.dx))
    cfg = CouplingConfig(
        materials=(material_lookup(args.material_left), material_lookup(args.material_right)),
        meshes=(mesh, mesh),
        grids=(grid_from_dt(args.t0, args.t_end, args.dt_left),
               grid_from_dt(args.t0, args.t_end, args.dt_right)),
        theta=_parse_theta(args.theta), integrator=args.integrator,
        method=args.method, tol=args.tol, max_iters=args.max_iters,
    )
    reports = solve_windows(cfg, args.windows)
    ok = True
    for w, rep in enumerate(reports):
        ok &= rep.converged
        print(f"[window {w}] iterations={rep.iterations} converged={rep.converged} "
              f"wall={rep.wall_time:.3f}s")
    return 0 if ok else 2


def _cmd_theta(args) -> int:
    mat1 = material_lookup(args.material_left)
    mat2 = material_lookup(args.material_right)
    n = round(1.0 / args.dx)
    if n < 2 or abs(n * args.dx - 1.0) > 1e-9:
        raise ValueError(f"dx={args.dx} must evenly divide the unit subdomain")
    theta = theta_opt_1d(mat1, mat2, args.dt, args.dx, n - 1)
    lim_t, lim_s = theta_limits(mat1, mat2)
    print(f"theta_opt = {theta:.12e}")
    print(f"theta_limit_temporal = {lim_t:.12e}")
    print(f"theta_limit_spatial = {lim_s:.12e}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_theta(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
