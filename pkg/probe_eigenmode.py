"""Throwaway: dominant eigenmode of the multirate NNWR iteration map."""
import numpy as np
import wrcouple as wr
from wrcouple.kernels import make_sweeper
from wrcouple.transfer import interp_values

mesh = wr.MeshSpec(1, 100)
mat = wr.material_lookup("steel")
op1 = wr.assemble_operator(mat, mesh, "left")
op2 = wr.assemble_operator(mat, mesh, "right")
n1, n2 = 5, 50
g1 = wr.TimeGrid(0.0, 1.0, n1)
g2 = wr.TimeGrid(0.0, 1.0, n2)
sw1 = make_sweeper(op1, g1.dt, "euler")
sw2 = make_sweeper(op2, g2.dt, "euler")
S1, S2 = op1.n_interior, op2.n_interior
theta = 0.25


def one_iter(e1_cols, e2_cols):
    """Error iteration with zero initial data (linear map)."""
    e1 = np.concatenate([[0.0], e1_cols])[None, :]
    e2 = np.concatenate([[0.0], e2_cols])[None, :]
    f1, _ = sw1.dirichlet_sweep(np.zeros(S1), e1)
    f2, _ = sw2.dirichlet_sweep(np.zeros(S2), e2)
    F1 = f1 + interp_values(g1, g2, f2)
    F2 = f2 + interp_values(g2, g1, f1)
    p1, _ = sw1.neumann_sweep(np.zeros(S1 + 1), F1)
    p2, _ = sw2.neumann_sweep(np.zeros(S2 + 1), F2)
    e1n = e1 - theta * (p1 + interp_values(g1, g2, p2))
    e2n = e2 - theta * (p2 + interp_values(g2, g1, p1))
    return e1n[0, 1:], e2n[0, 1:]


m = n1 + n2
L = np.zeros((m, m))
for j in range(m):
    x = np.zeros(m)
    x[j] = 1.0
    y1, y2 = one_iter(x[:n1], x[n1:])
    L[:, j] = np.concatenate([y1, y2])

vals, vecs = np.linalg.eig(L)
order = np.argsort(-np.abs(vals))
print("top eigenvalues:", np.round(vals[order][:6], 4))
v = np.real(vecs[:, order[0]])
v /= np.max(np.abs(v))
print("dominant mode, coarse cols (t=0.2..1.0):", np.round(v[:n1], 3))
print("dominant mode, fine cols (first 12, t=0.02..0.24):", np.round(v[n1:n1 + 12], 3))
print("dominant mode, fine cols (last 6):", np.round(v[-6:], 3))
