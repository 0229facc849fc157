"""Throwaway: update-norm decay + dominant eigenvalues of the error map at dx=1/500."""
import numpy as np
import wrcouple as wr
from wrcouple.kernels import make_sweeper
from wrcouple.transfer import interp_values

mesh = wr.MeshSpec(1, 500)


def setup(mat1, mat2, n1, n2):
    op1 = wr.assemble_operator(wr.material_lookup(mat1), mesh, "left")
    op2 = wr.assemble_operator(wr.material_lookup(mat2), mesh, "right")
    g1 = wr.TimeGrid(0.0, 1.0, n1)
    g2 = wr.TimeGrid(0.0, 1.0, n2)
    sw1 = make_sweeper(op1, g1.dt, "euler")
    sw2 = make_sweeper(op2, g2.dt, "euler")
    return op1, op2, g1, g2, sw1, sw2


def nnwr_err_map(state, ctx, theta):
    op1, op2, g1, g2, sw1, sw2 = ctx
    n1, n2 = g1.n_steps, g2.n_steps
    e1 = np.concatenate([[0.0], state[:n1]])[None, :]
    e2 = np.concatenate([[0.0], state[n1:]])[None, :]
    f1, _ = sw1.dirichlet_sweep(np.zeros(op1.n_interior), e1)
    f2, _ = sw2.dirichlet_sweep(np.zeros(op2.n_interior), e2)
    F1 = f1 + interp_values(g1, g2, f2)
    F2 = f2 + interp_values(g2, g1, f1)
    p1, _ = sw1.neumann_sweep(np.zeros(op1.n_interior + 1), F1)
    p2, _ = sw2.neumann_sweep(np.zeros(op2.n_interior + 1), F2)
    e1n = e1 - theta * (p1 + interp_values(g1, g2, p2))
    e2n = e2 - theta * (p2 + interp_values(g2, g1, p1))
    return np.concatenate([e1n[0, 1:], e2n[0, 1:]])


def dnwr_err_map(state, ctx, theta):
    op1, op2, g1, g2, sw1, sw2 = ctx
    n1 = g1.n_steps
    e1 = np.concatenate([[0.0], state[:n1]])[None, :]
    f1, _ = sw1.dirichlet_sweep(np.zeros(op1.n_interior), e1)
    forcing = -interp_values(g2, g1, f1)
    u2g, _ = sw2.neumann_sweep(np.zeros(op2.n_interior + 1), forcing)
    e2n = theta * u2g + (1 - theta) * np.concatenate([[0.0], state[n1:]])[None, :]
    e1n = interp_values(g1, g2, e2n)
    return np.concatenate([e1n[0, 1:], e2n[0, 1:]])


for pair, n2, theta in (("steel", 50, 0.25), ("steel", 100, 0.25)):
    ctx = setup(pair, pair, 5, n2)
    rng = np.random.default_rng(1)
    x = rng.standard_normal(5 + n2)
    x /= np.linalg.norm(x)
    lam = 0.0
    for k in range(60):
        y = nnwr_err_map(x, ctx, theta)
        lam = np.linalg.norm(y)
        x = y / lam
    print(f"NNWR ss (1/5,1/{n2}): dominant |eig| ~ {lam:.4f}; mode Tf comps "
          f"coarse={x[4]:+.3f} fine={x[-1]:+.3f}")
    x = rng.standard_normal(5 + n2)
    x /= np.linalg.norm(x)
    for k in range(60):
        y = dnwr_err_map(x, ctx, 0.5)
        lam = np.linalg.norm(y)
        x = y / lam
    print(f"DNWR ss (1/5,1/{n2}): dominant |eig| ~ {lam:.4f}")

# actual update-norm sequences
def run(mat1, mat2, n1, n2, theta, method):
    cfg = wr.CouplingConfig(
        materials=(wr.material_lookup(mat1), wr.material_lookup(mat2)),
        meshes=(mesh, mesh), grids=(wr.TimeGrid(0, 1, n1), wr.TimeGrid(0, 1, n2)),
        theta=theta, method=method, tol=1e-8, max_iters=40)
    rep = wr.solve(cfg)
    print(f"{method} {mat1}/{mat2} (1/{n1},1/{n2}): norms",
          " ".join(f"{u:.2e}" for u in rep.update_norms[:12]))


run("steel", "steel", 5, 50, 0.25, "nnwr")
run("air", "steel", 5, 50, "auto", "nnwr")
run("steel", "steel", 5, 50, 0.5, "dnwr")
run("air", "steel", 5, 50, 0.5, "dnwr")
