"""Pure scipy time-sweep backend.

Runs a whole Dirichlet or Neumann sweep over one time window with the
system matrices factorized once.  Works for any dimension; the compiled
backend accelerates the 1D tridiagonal case with identical semantics.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse.linalg as spla

from ..stepping import SDIRK_A, full_matrices


class PureSweeper:
    """Window sweeps of one subdomain (scipy factorizations)."""

    backend = "python"

    def __init__(self, op, dt, integrator):
        if integrator not in ("euler", "sdirk2"):
            raise ValueError(f"unknown integrator {integrator!r}")
        self.op = op
        self.dt = float(dt)
        self.integrator = integrator
        scale = self.dt if integrator == "euler" else SDIRK_A * self.dt
        inv = 1.0 / scale

        self._kd = spla.splu((op.m_ii * inv + op.a_ii).tocsc())
        self._mii_s = (op.m_ii * inv).tocsr()
        m_full, a_full = full_matrices(op)
        self._kn = spla.splu((m_full * inv + a_full).tocsc())
        self._mfull_s = (m_full * inv).tocsr()

        if integrator == "euler":
            self._c_new = (op.m_ig * inv + op.a_ig).tocsr()
            self._c_old = (op.m_ig * inv).tocsr()
            self._fg_new = (op.m_gg * inv + op.a_gg).toarray()
            self._fg_old = (op.m_gg * inv).toarray()
            self._fu_new = (op.m_gi * inv + op.a_gi).tocsr()
            self._fu_old = (op.m_gi * inv).tocsr()
        else:
            self._m_ig = op.m_ig.tocsr()
            self._a_ig = op.a_ig.tocsr()
            self._m_gg = op.m_gg.toarray()
            self._a_gg = op.a_gg.toarray()
            self._m_gi = op.m_gi.tocsr()
            self._a_gi = op.a_gi.tocsr()

    # -- Dirichlet -----------------------------------------------------

    def dirichlet_sweep(self, u0, g):
        """Sweep the Dirichlet problem over the window.

        ``g`` has shape (s, n_steps+1).  Returns ``(flux, u_final)`` with
        flux (s, n_steps+1) for Euler and (2, s, n_steps+1) for SDIRK2;
        the t0 flux column is a constant extension of the first step.
        """
        g = np.atleast_2d(np.asarray(g, dtype=float))
        u0 = np.asarray(u0, dtype=float)
        if self.integrator == "euler":
            return self._euler_dirichlet(u0, g)
        return self._sdirk2_dirichlet(u0, g)

    def _euler_dirichlet(self, u0, g):
        n_steps = g.shape[1] - 1
        flux = np.empty((self.op.n_interface, n_steps + 1))
        u = u0.copy()
        for n in range(n_steps):
            gn, gn1 = g[:, n], g[:, n + 1]
            u_new = self._kd.solve(self._mii_s @ u - self._c_new @ gn1 + self._c_old @ gn)
            flux[:, n + 1] = (self._fg_new @ gn1 - self._fg_old @ gn
                              + self._fu_new @ u_new - self._fu_old @ u)
            u = u_new
        flux[:, 0] = flux[:, 1]
        return flux, u

    def _sdirk2_dirichlet(self, u0, g):
        a = SDIRK_A
        dt = self.dt
        adt = a * dt
        n_steps = g.shape[1] - 1
        flux = np.empty((2, self.op.n_interface, n_steps + 1))
        u = u0.copy()
        for n in range(n_steps):
            gn, gn1 = g[:, n], g[:, n + 1]
            g_dot = (gn1 - gn) / dt
            g_a = gn + a * (gn1 - gn)
            rhs1 = self._mii_s @ u - self._m_ig @ g_dot - self._a_ig @ g_a
            u1 = self._kd.solve(rhs1)
            k1 = (u1 - u) / adt
            s2 = u + dt * (1.0 - a) * k1
            rhs2 = self._mii_s @ s2 - self._m_ig @ g_dot - self._a_ig @ gn1
            u2 = self._kd.solve(rhs2)
            k2 = (u2 - s2) / adt
            flux[0, :, n + 1] = self._m_gg @ g_dot + self._m_gi @ k1 + self._a_gg @ g_a + self._a_gi @ u1
            flux[1, :, n + 1] = self._m_gg @ g_dot + self._m_gi @ k2 + self._a_gg @ gn1 + self._a_gi @ u2
            u = u2
        flux[:, :, 0] = flux[:, :, 1]
        return flux, u

    # -- Neumann -------------------------------------------------------

    def neumann_sweep(self, psi0, forcing):
        """Sweep the Neumann problem; ``psi0`` is the full [I, Gamma] state.

        ``forcing`` has shape (s, n_steps+1) for Euler, (2, s, n_steps+1)
        for SDIRK2 (column 0 is never read).  Returns the interface trace
        (s, n_steps+1) and the final full state.
        """
        psi0 = np.asarray(psi0, dtype=float)
        forcing = np.asarray(forcing, dtype=float)
        if self.integrator == "euler":
            return self._euler_neumann(psi0, np.atleast_2d(forcing))
        return self._sdirk2_neumann(psi0, forcing)

    def _euler_neumann(self, psi0, forcing):
        ni = self.op.n_interior
        n_steps = forcing.shape[1] - 1
        trace = np.empty((self.op.n_interface, n_steps + 1))
        psi = psi0.copy()
        trace[:, 0] = psi[ni:]
        for n in range(n_steps):
            rhs = self._mfull_s @ psi
            rhs[ni:] += forcing[:, n + 1]
            psi = self._kn.solve(rhs)
            trace[:, n + 1] = psi[ni:]
        return trace, psi

    def _sdirk2_neumann(self, psi0, forcing):
        a = SDIRK_A
        dt = self.dt
        adt = a * dt
        ni = self.op.n_interior
        n_steps = forcing.shape[2] - 1
        trace = np.empty((self.op.n_interface, n_steps + 1))
        psi = psi0.copy()
        trace[:, 0] = psi[ni:]
        for n in range(n_steps):
            rhs1 = self._mfull_s @ psi
            rhs1[ni:] += forcing[0, :, n + 1]
            y1 = self._kn.solve(rhs1)
            k1 = (y1 - psi) / adt
            s2 = psi + dt * (1.0 - a) * k1
            rhs2 = self._mfull_s @ s2
            rhs2[ni:] += forcing[1, :, n + 1]
            psi = self._kn.solve(rhs2)
            trace[:, n + 1] = psi[ni:]
        return trace, psi
