"""Throwaway: compare flux-trace t0/label conventions against Tables 3-4."""
import numpy as np
import wrcouple as wr
import wrcouple.solvers as sv

MODE = "clamp"


class PatchedSweeper:
    def __init__(self, inner):
        self.inner = inner
        self.backend = inner.backend

    def dirichlet_sweep(self, u0, g):
        f, u = self.inner.dirichlet_sweep(u0, g)
        if MODE == "zero":
            f[..., 0] = 0.0
        elif MODE == "extrapolate":
            f[..., 0] = 2.0 * f[..., 1] - f[..., 2]
        elif MODE == "shift":  # labels at step starts
            f[..., :-1] = f[..., 1:]
        return f, u

    def neumann_sweep(self, psi0, forcing):
        if MODE == "shift":
            forcing = np.asarray(forcing).copy()
            forcing[..., 1:] = forcing[..., :-1]  # step n reads original col n
        return self.inner.neumann_sweep(psi0, forcing)


_orig = sv.make_sweeper
sv.make_sweeper = lambda op, dt, integ, backend="auto": PatchedSweeper(_orig(op, dt, integ, backend))


def cfg(mat1, mat2, n1, n2, theta, method="nnwr"):
    mesh = wr.MeshSpec(1, 500)
    return wr.CouplingConfig(
        materials=(wr.material_lookup(mat1), wr.material_lookup(mat2)),
        meshes=(mesh, mesh),
        grids=(wr.TimeGrid(0.0, 1.0, n1), wr.TimeGrid(0.0, 1.0, n2)),
        theta=theta, method=method, tol=1e-8, max_iters=200)


for MODE in ("clamp", "zero", "extrapolate", "shift"):
    rows = []
    for n2 in (10, 50, 100):
        r1 = wr.nnwr_solve(cfg("steel", "steel", 5, n2, 0.25))
        r2 = wr.dnwr_solve(cfg("steel", "steel", 5, n2, 0.5, method="dnwr"))
        rows.append(f"ss(1/5,1/{n2}) NN={r1.iterations}{'' if r1.converged else '*'} DN={r2.iterations}{'' if r2.converged else '*'}")
    for n2 in (10, 50, 100):
        r1 = wr.nnwr_solve(cfg("air", "steel", 5, n2, "auto"))
        r2 = wr.dnwr_solve(cfg("air", "steel", 5, n2, 0.5, method="dnwr"))
        rows.append(f"as(1/5,1/{n2}) NN={r1.iterations}{'' if r1.converged else '*'} DN={r2.iterations}{'' if r2.converged else '*'}")
    print(f"{MODE:12s} " + "  ".join(rows))
print("target       ss NN=3 DN=6 | NN=3 DN=71 | NN=3 DN=div   as NN=3 DN=12 | NN=4 DN=12 | NN=4 DN=12")
