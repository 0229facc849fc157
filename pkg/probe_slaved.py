"""Throwaway: slave the coarser trace to the finer one each NNWR iteration."""
import numpy as np
import wrcouple as wr
import wrcouple.solvers as sv
from wrcouple.kernels import make_sweeper
from wrcouple.transfer import interp_values


def nnwr_slaved(cfg):
    op1 = wr.assemble_operator(cfg.materials[0], cfg.meshes[0], "left")
    op2 = wr.assemble_operator(cfg.materials[1], cfg.meshes[1], "right")
    g1grid, g2grid = cfg.grids
    sw1 = make_sweeper(op1, g1grid.dt, cfg.integrator)
    sw2 = make_sweeper(op2, g2grid.dt, cfg.integrator)
    theta = sv.resolve_theta(cfg)
    ic = cfg.initial_condition or sv.default_initial_condition(cfg.dim)
    u0_1 = sv._eval_at(ic, op1.interior_coords)
    u0_2 = sv._eval_at(ic, op2.interior_coords)
    g0 = sv._eval_at(ic, op1.interface_coords)
    g1 = np.tile(g0[:, None], (1, g1grid.n_steps + 1))
    g2 = np.tile(g0[:, None], (1, g2grid.n_steps + 1))
    S1, S2 = op1.n_interior, op2.n_interior
    s = op1.n_interface
    fine_is_2 = g2grid.n_steps >= g1grid.n_steps
    for it in range(1, cfg.max_iters + 1):
        f1, _ = sw1.dirichlet_sweep(u0_1, g1)
        f2, _ = sw2.dirichlet_sweep(u0_2, g2)
        F1 = f1 + interp_values(g1grid, g2grid, f2)
        F2 = f2 + interp_values(g2grid, g1grid, f1)
        p1, _ = sw1.neumann_sweep(np.zeros(S1 + s), F1)
        p2, _ = sw2.neumann_sweep(np.zeros(S2 + s), F2)
        g1n = g1 - theta * (p1 + interp_values(g1grid, g2grid, p2))
        g2n = g2 - theta * (p2 + interp_values(g2grid, g1grid, p1))
        if fine_is_2:
            g1n = interp_values(g1grid, g2grid, g2n)
        else:
            g2n = interp_values(g2grid, g1grid, g1n)
        norm = float(np.linalg.norm(g1n[:, -1] - g1[:, -1]))
        g1, g2 = g1n, g2n
        if norm <= cfg.tol:
            return it, True
        if norm > 1e10:
            return it, False
    return cfg.max_iters, False


def cfg(mat1, mat2, n1, n2, theta):
    mesh = wr.MeshSpec(1, 500)
    return wr.CouplingConfig(
        materials=(wr.material_lookup(mat1), wr.material_lookup(mat2)),
        meshes=(mesh, mesh),
        grids=(wr.TimeGrid(0.0, 1.0, n1), wr.TimeGrid(0.0, 1.0, n2)),
        theta=theta, tol=1e-8, max_iters=200)


print("steel-steel multirate, slaved coarse trace (target 3,3,3):")
for n2 in (10, 50, 100):
    it, conv = nnwr_slaved(cfg("steel", "steel", 5, n2, 0.25))
    print(f"  (1/5,1/{n2}): {it} iterations converged={conv}")
print("air-steel multirate theta=auto (target 3,4,4):")
for n2 in (10, 50, 100):
    it, conv = nnwr_slaved(cfg("air", "steel", 5, n2, "auto"))
    print(f"  (1/5,1/{n2}): {it} iterations converged={conv}")
print("conforming steel-steel (target 2):")
for n in (1, 10, 100):
    it, conv = nnwr_slaved(cfg("steel", "steel", n, n, 0.25))
    print(f"  dt=1/{n}: {it} iterations converged={conv}")
