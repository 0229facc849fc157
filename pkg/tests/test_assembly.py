import numpy as np
import pytest

from wrcouple import (Material, MeshSpec, assemble_1d, assemble_2d,
                      assemble_monolithic, material_lookup)
from wrcouple.assembly import _full_matrices_2d

UNIT = Material("unit", 1.0, 1.0, 1.0)


def tridiag(n, lo, d, hi):
    return np.diag(np.full(n - 1, lo), -1) + np.diag(np.full(n, d)) + np.diag(np.full(n - 1, hi), 1)


class Test1D:
    def test_smallest_mesh_blocks(self):
        op = assemble_1d(UNIT, MeshSpec(1, 2), "left")
        assert op.a_ii.toarray() == pytest.approx([[8.0]])
        assert op.m_ii.toarray() == pytest.approx([[2.0 / 3.0]])
        assert op.a_gg.toarray() == pytest.approx([[4.0]])
        assert op.m_gg.toarray() == pytest.approx([[1.0 / 3.0]])
        assert op.a_ig.toarray() == pytest.approx([[-4.0]])
        assert op.m_ig.toarray() == pytest.approx([[1.0 / 6.0]])

    def test_air_table_values(self):
        op = assemble_1d(material_lookup("air"), MeshSpec(1, 100), "left")
        assert op.a_gg.toarray()[0, 0] == pytest.approx(243.0)
        assert op.m_gg.toarray()[0, 0] == pytest.approx(433.1667, rel=1e-4)

    def test_rejects_degenerate_mesh(self):
        with pytest.raises(ValueError):
            MeshSpec(1, 1)

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            assemble_1d(UNIT, MeshSpec(1, 4), "middle")

    @pytest.mark.parametrize("n_cells", range(2, 52))
    def test_closed_form_blocks(self, n_cells):
        mat = material_lookup("water")
        mesh = MeshSpec(1, n_cells)
        n = n_cells - 1
        dx = mesh.dx
        lam = mat.lambda_cond / dx**2
        a6 = mat.alpha / 6.0
        for side, j in (("left", n - 1), ("right", 0)):
            op = assemble_1d(mat, mesh, side)
            assert op.a_ii.toarray() == pytest.approx(tridiag(n, -lam, 2 * lam, -lam))
            assert op.m_ii.toarray() == pytest.approx(tridiag(n, a6, 4 * a6, a6))
            e = np.zeros((n, 1))
            e[j, 0] = 1.0
            assert op.a_ig.toarray() == pytest.approx(-lam * e)
            assert op.m_ig.toarray() == pytest.approx(a6 * e)

    def test_coupling_hits_correct_node(self):
        left = assemble_1d(UNIT, MeshSpec(1, 5), "left")
        right = assemble_1d(UNIT, MeshSpec(1, 5), "right")
        assert left.a_ig.nonzero()[0][0] == 3
        assert right.a_ig.nonzero()[0][0] == 0

    def test_interior_coordinates(self):
        left = assemble_1d(UNIT, MeshSpec(1, 4), "left")
        right = assemble_1d(UNIT, MeshSpec(1, 4), "right")
        assert left.interior_coords[:, 0] == pytest.approx([-0.75, -0.5, -0.25])
        assert right.interior_coords[:, 0] == pytest.approx([0.25, 0.5, 0.75])


@pytest.mark.parametrize("dim", [1, 2])
class TestSharedProperties:
    def _op(self, mat, dim, side="left", n_cells=4):
        mesh = MeshSpec(dim, n_cells)
        return assemble_1d(mat, mesh, side) if dim == 1 else assemble_2d(mat, mesh, side)

    def test_transposition_identities(self, dim):
        op = self._op(material_lookup("steel"), dim)
        assert (op.m_gi - op.m_ig.T).nnz == 0
        assert (op.a_gi - op.a_ig.T).nnz == 0
        sym = op.a_ii - op.a_ii.T
        assert np.max(np.abs(sym.toarray())) < 1e-12

    def test_coefficient_scaling(self, dim):
        base = self._op(Material("a", 1.0, 2.0, 3.0), dim)
        scaled = self._op(Material("b", 5.0, 2.0, 3.0), dim)
        for blk in ("a_ii", "a_ig", "a_gg"):
            assert getattr(scaled, blk).toarray() == pytest.approx(5.0 * getattr(base, blk).toarray())
            m = getattr(base, blk.replace("a_", "m_"))
            assert getattr(scaled, blk.replace("a_", "m_")).toarray() == pytest.approx(m.toarray())

    def test_positive_diagonals(self, dim):
        op = self._op(material_lookup("air"), dim)
        assert np.all(op.a_ii.diagonal() > 0)
        assert np.all(op.m_ii.diagonal() > 0)


class Test2D:
    def test_full_stiffness_row_sums_vanish(self):
        m_full, a_full, _, _, _ = _full_matrices_2d(UNIT, MeshSpec(2, 4), "left")
        assert abs(a_full.sum()) < 1e-12
        assert np.max(np.abs(np.asarray(a_full.sum(axis=1)))) < 1e-12
        # total mass equals alpha * |Omega|
        assert m_full.sum() == pytest.approx(1.0)

    def test_interface_count_and_order(self):
        op = assemble_2d(UNIT, MeshSpec(2, 5), "left")
        assert op.n_interface == 4
        assert op.interface_coords[:, 0] == pytest.approx([0, 0, 0, 0])
        assert np.all(np.diff(op.interface_coords[:, 1]) > 0)

    def test_single_interface_node_against_triangle_oracle(self):
        # n_cells=2: one interface unknown at (0, 1/2); assemble its diagonal
        # entries by summing over the incident triangles by hand
        mat = Material("m", 1.7, 2.0, 1.5)
        op = assemble_2d(mat, MeshSpec(2, 2), "right")
        assert op.n_interface == 1
        h = 0.5
        node = np.array([0.0, 0.5])
        tris = [  # all triangles of the right domain touching (0, 1/2)
            [(0.0, 0.0), (0.5, 0.5), (0.0, 0.5)],
            [(0.0, 0.5), (0.5, 0.5), (0.5, 1.0)],
            [(0.0, 0.5), (0.5, 1.0), (0.0, 1.0)],
        ]
        a_val = m_val = 0.0
        for tri in tris:
            tri = np.array(tri)
            k = int(np.argmin(np.sum((tri - node) ** 2, axis=1)))
            bx = np.array([tri[1][1] - tri[2][1], tri[2][1] - tri[0][1], tri[0][1] - tri[1][1]])
            by = np.array([tri[2][0] - tri[1][0], tri[0][0] - tri[2][0], tri[1][0] - tri[0][0]])
            area = 0.5 * abs(tri[0][0] * bx[0] + tri[1][0] * bx[1] + tri[2][0] * bx[2])
            a_val += mat.lambda_cond * (bx[k] ** 2 + by[k] ** 2) / (4.0 * area)
            m_val += mat.alpha * area * 2.0 / 12.0
        assert op.a_gg.toarray()[0, 0] == pytest.approx(a_val)
        assert op.m_gg.toarray()[0, 0] == pytest.approx(m_val)
        assert a_val == pytest.approx(2.0 * mat.lambda_cond)
        assert m_val == pytest.approx(mat.alpha * h * h / 4.0)

    def test_left_right_symmetry(self):
        mat = material_lookup("water")
        mesh = MeshSpec(2, 4)
        left = assemble_2d(mat, mesh, "left")
        right = assemble_2d(mat, mesh, "right")
        assert left.a_gg.toarray() == pytest.approx(right.a_gg.toarray())
        assert left.m_gg.toarray() == pytest.approx(right.m_gg.toarray())
        # mirrored coupling: map left interior (ix, iy) -> right (n-ix, iy)
        n = mesh.n_cells - 1
        perm = np.concatenate([np.arange((n - 1 - bx) * n, (n - bx) * n) for bx in range(n)])
        assert left.a_ig.toarray()[perm] == pytest.approx(right.a_ig.toarray())
        assert left.m_ig.toarray()[perm] == pytest.approx(right.m_ig.toarray())


class TestMonolithic:
    def test_identical_materials_give_standard_discretization(self):
        mono = assemble_monolithic(UNIT, UNIT, MeshSpec(1, 4))
        n = mono.n_total
        assert n == 7
        lam = 16.0  # lambda/dx^2
        assert mono.stiffness.toarray() == pytest.approx(tridiag(n, -lam, 2 * lam, -lam))
        a6 = 1.0 / 6.0
        assert mono.mass.toarray() == pytest.approx(tridiag(n, a6, 4 * a6, a6))

    def test_two_cell_glue(self):
        m1 = Material("m1", 2.0, 1.0, 1.0)
        m2 = Material("m2", 3.0, 1.0, 1.0)
        mono = assemble_monolithic(m1, m2, MeshSpec(1, 2))
        a = mono.stiffness.toarray()
        assert a == pytest.approx(np.array([
            [16.0, -8.0, 0.0],
            [-8.0, 8.0 + 12.0, -12.0],
            [0.0, -12.0, 24.0],
        ]))

    def test_interface_row_sum(self):
        m1, m2 = material_lookup("air"), material_lookup("steel")
        mono = assemble_monolithic(m1, m2, MeshSpec(1, 10))
        row = mono.mass[mono.n1].toarray().ravel()
        assert row.sum() == pytest.approx((m1.alpha + m2.alpha) / 2.0)
        interior_row = mono.mass[1].toarray().ravel()
        assert interior_row.sum() == pytest.approx(m1.alpha)

    @pytest.mark.parametrize("dim", [1, 2])
    def test_glue_matches_subdomain_residuals(self, dim):
        rng = np.random.default_rng(42)
        m1, m2 = material_lookup("air"), material_lookup("water")
        mesh = MeshSpec(dim, 5)
        from wrcouple import assemble_operator
        op1 = assemble_operator(m1, mesh, "left")
        op2 = assemble_operator(m2, mesh, "right")
        mono = assemble_monolithic(m1, m2, mesh)
        x1 = rng.standard_normal(op1.n_interior)
        xg = rng.standard_normal(op1.n_interface)
        x2 = rng.standard_normal(op2.n_interior)
        full = np.concatenate([x1, xg, x2])
        for mono_mat, b1, b2 in ((mono.stiffness, "a", "a"), (mono.mass, "m", "m")):
            got = mono_mat @ full
            r1 = getattr(op1, b1 + "_ii") @ x1 + getattr(op1, b1 + "_ig") @ xg
            rg = (getattr(op1, b1 + "_gi") @ x1 + getattr(op1, b1 + "_gg") @ xg
                  + getattr(op2, b2 + "_gg") @ xg + getattr(op2, b2 + "_gi") @ x2)
            r2 = getattr(op2, b2 + "_ig") @ xg + getattr(op2, b2 + "_ii") @ x2
            want = np.concatenate([r1, rg, r2])
            assert got == pytest.approx(want, rel=1e-13, abs=1e-13)
