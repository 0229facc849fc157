import numpy as np
import pytest

from wrcouple import (Material, MeshSpec, TimeGrid, assemble_1d, assemble_monolithic,
                      assemble_operator, euler_dirichlet_step, euler_neumann_step,
                      material_lookup, monolithic_solve, sdirk2_dirichlet_step,
                      sdirk2_neumann_step)
from wrcouple.stepping import SDIRK_A, SdirkCoeffs, StepResult, full_matrices

UNIT = Material("unit", 1.0, 1.0, 1.0)


@pytest.fixture
def op_small():
    # dx = 1/2, one interior node; the systems are scalars/2x2
    return assemble_1d(UNIT, MeshSpec(1, 2), "left")


class TestSdirkCoeffs:
    def test_value(self):
        c = SdirkCoeffs()
        assert c.a == pytest.approx(1.0 - 0.5 * np.sqrt(2.0))
        assert 0.0 < c.a < 0.5
        assert c.stages == 2


class TestEulerDirichlet:
    def test_zero_inputs(self, op_small):
        r = euler_dirichlet_step(op_small, [0.0], [0.0], [0.0], 1.0)
        assert r.interior_state == pytest.approx([0.0])
        assert r.flux == pytest.approx([0.0])

    def test_steady_linear_profile(self, op_small):
        r = euler_dirichlet_step(op_small, [0.5], [1.0], [1.0], 1.0)
        assert r.interior_state == pytest.approx([0.5])
        assert r.flux == pytest.approx([2.0])

    def test_cold_start(self, op_small):
        r = euler_dirichlet_step(op_small, [0.0], [0.0], [1.0], 1.0)
        assert r.interior_state == pytest.approx([23.0 / 52.0])

    def test_dimension_mismatch(self, op_small):
        with pytest.raises(ValueError):
            euler_dirichlet_step(op_small, [0.0, 0.0], [0.0], [0.0], 1.0)

    def test_nonpositive_dt(self, op_small):
        with pytest.raises(ValueError):
            euler_dirichlet_step(op_small, [0.0], [0.0], [0.0], 0.0)


class TestEulerNeumann:
    def test_zero_inputs(self, op_small):
        r = euler_neumann_step(op_small, [0.0, 0.0], [0.0], 1.0)
        assert r.interior_state == pytest.approx([0.0])
        assert r.interface_state == pytest.approx([0.0])

    def test_hand_solved_2x2(self, op_small):
        r = euler_neumann_step(op_small, [0.0, 0.0], [1.0], 1.0)
        assert r.interior_state == pytest.approx([138.0 / 823.0], rel=1e-12)
        assert r.interface_state == pytest.approx([312.0 / 823.0], rel=1e-12)

    def test_linearity(self, op_small):
        r1 = euler_neumann_step(op_small, [0.0, 0.0], [1.0], 0.3)
        r2 = euler_neumann_step(op_small, [0.0, 0.0], [2.0], 0.3)
        assert r2.interface_state == pytest.approx(2.0 * r1.interface_state, rel=1e-14)
        assert r2.interior_state == pytest.approx(2.0 * r1.interior_state, rel=1e-14)


def scalar_sdirk2_dirichlet_oracle(op, u0, g0, g1, dt):
    """Butcher-recursion oracle: two implicit-Euler-type stage solves on dense scalars."""
    a = SDIRK_A
    m = op.m_ii.toarray()[0, 0]
    k_mat = op.a_ii.toarray()[0, 0]
    mig = op.m_ig.toarray()[0, 0]
    aig = op.a_ig.toarray()[0, 0]
    gdot = (g1 - g0) / dt
    ga = g0 + a * (g1 - g0)
    lhs = m / (a * dt) + k_mat
    u_stage1 = (m / (a * dt) * u0 - mig * gdot - aig * ga) / lhs
    k1 = (u_stage1 - u0) / (a * dt)
    s2 = u0 + dt * (1 - a) * k1
    u_stage2 = (m / (a * dt) * s2 - mig * gdot - aig * g1) / lhs
    return u_stage1, u_stage2


class TestSdirk2Dirichlet:
    def test_zero_inputs(self, op_small):
        r = sdirk2_dirichlet_step(op_small, [0.0], [0.0], [0.0], 1.0)
        assert r.interior_state == pytest.approx([0.0])
        assert r.stage_fluxes == pytest.approx(np.zeros((2, 1)))

    def test_steady_state_preserved(self, op_small):
        r = sdirk2_dirichlet_step(op_small, [0.5], [1.0], [1.0], 1.0)
        assert r.interior_state == pytest.approx([0.5], rel=1e-14)
        assert r.stage_fluxes == pytest.approx(2.0 * np.ones((2, 1)), rel=1e-13)

    def test_cold_start_against_butcher_oracle(self, op_small):
        r = sdirk2_dirichlet_step(op_small, [0.0], [0.0], [1.0], 1.0)
        _, u2 = scalar_sdirk2_dirichlet_oracle(op_small, 0.0, 0.0, 1.0, 1.0)
        assert r.interior_state == pytest.approx([u2], rel=1e-13)

    def test_reduces_to_euler_composition(self):
        # stage solves must reproduce the implicit-Euler recursion with step a*dt
        op = assemble_1d(material_lookup("air"), MeshSpec(1, 6), "right")
        rng = np.random.default_rng(3)
        u0 = rng.standard_normal(op.n_interior)
        g0, g1 = rng.standard_normal(1), rng.standard_normal(1)
        dt = 0.37
        a = SDIRK_A
        r = sdirk2_dirichlet_step(op, u0, g0, g1, dt)

        gdot = (g1 - g0) / dt
        ga = g0 + a * (g1 - g0)
        import scipy.sparse.linalg as spla
        lhs = spla.splu((op.m_ii / (a * dt) + op.a_ii).tocsc())
        u1 = lhs.solve(op.m_ii @ u0 / (a * dt) - op.m_ig @ gdot - op.a_ig @ ga)
        k1 = (u1 - u0) / (a * dt)
        s2 = u0 + dt * (1 - a) * k1
        u2 = lhs.solve(op.m_ii @ s2 / (a * dt) - op.m_ig @ gdot - op.a_ig @ g1)
        assert r.interior_state == pytest.approx(u2, rel=1e-13)


class TestSdirk2Neumann:
    def test_zero_inputs(self, op_small):
        r = sdirk2_neumann_step(op_small, [0.0, 0.0], np.zeros((2, 1)), 1.0)
        assert r.interior_state == pytest.approx([0.0])
        assert r.interface_state == pytest.approx([0.0])

    def test_stage_flux_linearity(self, op_small):
        f = np.array([[1.0], [2.0]])
        r1 = sdirk2_neumann_step(op_small, [0.0, 0.0], f, 0.5)
        r2 = sdirk2_neumann_step(op_small, [0.0, 0.0], 3.0 * f, 0.5)
        assert r2.interface_state == pytest.approx(3.0 * r1.interface_state, rel=1e-13)

    def test_against_dense_two_stage_oracle(self, op_small):
        dt = 1.0
        a = SDIRK_A
        m, amat = (x.toarray() for x in full_matrices(op_small))
        lhs = m / (a * dt) + amat
        f = np.array([1.0, 1.0])
        psi0 = np.zeros(2)
        y1 = np.linalg.solve(lhs, m @ psi0 / (a * dt) + np.array([0.0, f[0]]))
        k1 = (y1 - psi0) / (a * dt)
        s2 = psi0 + dt * (1 - a) * k1
        y2 = np.linalg.solve(lhs, m @ s2 / (a * dt) + np.array([0.0, f[1]]))
        r = sdirk2_neumann_step(op_small, psi0, np.array([[1.0], [1.0]]), dt)
        assert r.interior_state == pytest.approx(y2[:1], rel=1e-13)
        assert r.interface_state == pytest.approx(y2[1:], rel=1e-13)

    def test_wrong_stage_count(self, op_small):
        with pytest.raises(ValueError):
            sdirk2_neumann_step(op_small, [0.0, 0.0], np.zeros((3, 1)), 1.0)


class TestStepResult:
    def test_flux_and_interface_exclusive(self):
        with pytest.raises(ValueError):
            StepResult(interior_state=np.zeros(1), interface_state=np.zeros(1),
                       flux=np.zeros(1))


class TestFluxConsistency:
    def test_steady_flux_equals_conductivity_times_slope(self):
        # linear steady profile u(x) = (x+1) on the left subdomain: the
        # grid-scaled discrete flux is lambda * slope / dx
        mat = Material("m", 2.5, 1.0, 1.0)
        mesh = MeshSpec(1, 8)
        op = assemble_1d(mat, mesh, "left")
        x = op.interior_coords[:, 0]
        u = x + 1.0
        r = euler_dirichlet_step(op, u, [1.0], [1.0], 0.1)
        assert r.interior_state == pytest.approx(u, rel=1e-12)
        assert r.flux[0] == pytest.approx(mat.lambda_cond * 1.0 / mesh.dx, rel=1e-12)


class TestMonolithic:
    def test_zero_initial_state(self):
        mono = assemble_monolithic(UNIT, UNIT, MeshSpec(1, 4))
        traj = monolithic_solve(mono, np.zeros(mono.n_total), TimeGrid(0, 1, 4))
        assert traj == pytest.approx(np.zeros((5, mono.n_total)))

    def test_symmetric_data_stays_symmetric(self):
        mono = assemble_monolithic(UNIT, UNIT, MeshSpec(1, 10))
        u0 = np.cos(np.pi * mono.coords[:, 0] / 2.0)
        traj = monolithic_solve(mono, u0, TimeGrid(0, 1, 8))
        for snap in traj:
            assert snap == pytest.approx(snap[::-1], rel=1e-13, abs=1e-13)

    def test_energy_decay_euler(self):
        mono = assemble_monolithic(material_lookup("air"), material_lookup("steel"),
                                   MeshSpec(1, 12))
        rng = np.random.default_rng(7)
        u0 = rng.standard_normal(mono.n_total)
        traj = monolithic_solve(mono, u0, TimeGrid(0, 1, 10), "euler")
        energies = [float(u @ (mono.mass @ u)) for u in traj]
        assert all(e2 <= e1 * (1 + 1e-12) for e1, e2 in zip(energies, energies[1:]))

    def test_invalid_integrator(self):
        mono = assemble_monolithic(UNIT, UNIT, MeshSpec(1, 4))
        with pytest.raises(ValueError):
            monolithic_solve(mono, np.zeros(mono.n_total), TimeGrid(0, 1, 2), "rk4")

    @pytest.mark.parametrize("integrator,expected,tol", [("euler", 1.0, 0.15), ("sdirk2", 2.0, 0.2)])
    def test_temporal_order(self, integrator, expected, tol):
        m1 = Material("m1", 1.0, 1.0, 1.0)
        m2 = Material("m2", 2.0, 3.0, 1.0)
        mono = assemble_monolithic(m1, m2, MeshSpec(1, 30))
        u0 = np.sin(np.pi * (mono.coords[:, 0] + 1.0) / 2.0)
        ref = monolithic_solve(mono, u0, TimeGrid(0, 1, 1024), integrator)[-1]
        errs = []
        dts = [1 / 8, 1 / 16, 1 / 32]
        for n in (8, 16, 32):
            got = monolithic_solve(mono, u0, TimeGrid(0, 1, n), integrator)[-1]
            errs.append(np.linalg.norm(got - ref))
        slope = np.polyfit(np.log(dts), np.log(errs), 1)[0]
        assert slope == pytest.approx(expected, abs=tol)
