"""Throwaway: measure multirate cross-operator defects at T_f.

For identical materials the conforming theory gives N(F e) = e exactly.
Multirate: X12 = N1(I_down(F2 e2)) should approx I_down(e2), and
X21 = N2(I_up(F1 e1)) should approx I_up(e1).  Measure the T_f defect.
"""
import numpy as np
import wrcouple as wr
from wrcouple.kernels import make_sweeper
from wrcouple.transfer import interp_values

mesh = wr.MeshSpec(1, 100)
mat = wr.material_lookup("steel")
op1 = wr.assemble_operator(mat, mesh, "left")
op2 = wr.assemble_operator(mat, mesh, "right")
g1 = wr.TimeGrid(0.0, 1.0, 5)
g2 = wr.TimeGrid(0.0, 1.0, 50)
sw1 = make_sweeper(op1, g1.dt, "euler")
sw2 = make_sweeper(op2, g2.dt, "euler")

S1, S2 = op1.n_interior, op2.n_interior


def probe(trace_func, label):
    # e2 on fine grid, e1 on coarse grid, zero at t0 (error traces vanish at T0)
    e2 = np.array([[0.0] + [trace_func(t) for t in g2.points[1:]]])
    e1 = np.array([[0.0] + [trace_func(t) for t in g1.points[1:]]])

    # X12: fine flux, downsample, coarse Neumann
    f2, _ = sw2.dirichlet_sweep(np.zeros(S2), e2)
    down = interp_values(g1, g2, f2)
    psi1, _ = sw1.neumann_sweep(np.zeros(S1 + 1), down)
    ideal1 = interp_values(g1, g2, e2)
    d12 = psi1[0, -1] - ideal1[0, -1]

    # X21: coarse flux, upsample, fine Neumann
    f1, _ = sw1.dirichlet_sweep(np.zeros(S1), e1)
    up = interp_values(g2, g1, f1)
    psi2, _ = sw2.neumann_sweep(np.zeros(S2 + 1), up)
    ideal2 = interp_values(g2, g1, e1)
    d21 = psi2[0, -1] - ideal2[0, -1]

    eT = trace_func(1.0)
    print(f"{label:18s} e(Tf)={eT:+.3f}  X12 defect={d12:+.4e}  X21 defect={d21:+.4e}  "
          f"sum={(d12 + d21):+.4e}  rate |sum|/4/|e|={abs(d12 + d21) / 4 / abs(eT):.3e}")


probe(lambda t: 1.0, "constant")
probe(lambda t: t, "linear")
probe(lambda t: np.exp(-3 * t), "decaying")
probe(lambda t: np.exp(-30 * t), "fast transient")
