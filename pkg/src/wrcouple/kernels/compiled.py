"""Plan builder for the compiled 1D sweep kernels.

Extracts tridiagonal bands from one subdomain operator, prefactorizes
the Thomas LU once, and reorders the Neumann unknowns into spatial
order (left: [interior..., Gamma], right: [Gamma, interior...]) so both
systems stay tridiagonal.
"""

from __future__ import annotations

import numpy as np

from ..stepping import SDIRK_A
from . import _sweeps


def _thomas_factor(sub, diag, sup):
    n = diag.size
    dp = diag.copy()
    low = np.empty(max(n - 1, 0))
    for i in range(n - 1):
        low[i] = sub[i] / dp[i]
        dp[i + 1] = diag[i + 1] - low[i] * sup[i]
    return low, dp


def _bands(mat):
    return (np.asarray(mat.diagonal(-1)), np.asarray(mat.diagonal(0)),
            np.asarray(mat.diagonal(1)))


class CompiledSweeper:
    """Window sweeps of one 1D subdomain (fused C loops)."""

    backend = "compiled"

    def __init__(self, op, dt, integrator):
        if op.mesh.dim != 1 or op.n_interface != 1:
            raise ValueError("compiled kernels cover the 1D single-interface case only")
        if integrator not in ("euler", "sdirk2"):
            raise ValueError(f"unknown integrator {integrator!r}")
        self.op = op
        self.dt = float(dt)
        self.integrator = integrator
        scale = self.dt if integrator == "euler" else SDIRK_A * self.dt
        inv = 1.0 / scale
        ni = op.n_interior

        self._jc = int(op.m_ig.nonzero()[0][0])
        self._m_igv = float(op.m_ig[self._jc, 0])
        self._a_igv = float(op.a_ig[self._jc, 0])
        self._m_ggv = float(op.m_gg[0, 0])
        self._a_ggv = float(op.a_gg[0, 0])

        ksub, kdiag, ksup = _bands(op.m_ii * inv + op.a_ii)
        self._kd = (*_thomas_factor(ksub, kdiag, ksup), ksup)
        self._md = _bands(op.m_ii * inv)

        # Neumann system in spatial order, interface node at jg
        self._jg = ni if op.side == "left" else 0
        cpl_k = self._m_igv * inv + self._a_igv
        cpl_m = self._m_igv * inv
        gg_k = self._m_ggv * inv + self._a_ggv
        gg_m = self._m_ggv * inv
        if op.side == "left":
            ndiag = np.append(kdiag, gg_k)
            noff = np.append(ksub, cpl_k)
            mdiag = np.append(self._md[1], gg_m)
            moff = np.append(self._md[0], cpl_m)
        else:
            ndiag = np.append(gg_k, kdiag)
            noff = np.append(cpl_k, ksub)
            mdiag = np.append(gg_m, self._md[1])
            moff = np.append(cpl_m, self._md[0])
        self._kn = (*_thomas_factor(noff, ndiag, noff), noff)
        self._mn = (moff, mdiag, moff)

    def _to_spatial(self, psi_block):
        if self.op.side == "left":
            return np.ascontiguousarray(psi_block, dtype=float)
        return np.concatenate([psi_block[-1:], psi_block[:-1]]).astype(float)

    def _from_spatial(self, psi_spatial):
        if self.op.side == "left":
            return psi_spatial
        return np.concatenate([psi_spatial[1:], psi_spatial[:1]])

    def dirichlet_sweep(self, u0, g):
        g = np.ascontiguousarray(np.atleast_2d(np.asarray(g, dtype=float))[0])
        u0 = np.ascontiguousarray(u0, dtype=float)
        l, dp, sup = self._kd
        msub, mdiag, msup = self._md
        if self.integrator == "euler":
            inv = 1.0 / self.dt
            flux, u_final = _sweeps.euler_dirichlet_sweep(
                l, dp, sup, msub, mdiag, msup, self._jc,
                -(self._m_igv * inv + self._a_igv), self._m_igv * inv,
                self._m_ggv * inv + self._a_ggv, -self._m_ggv * inv,
                self._m_igv * inv + self._a_igv, -self._m_igv * inv,
                u0, g)
            return flux.reshape(1, -1), u_final
        f1, f2, u_final = _sweeps.sdirk2_dirichlet_sweep(
            l, dp, sup, msub, mdiag, msup, self._jc,
            self._m_igv, self._a_igv, self._m_ggv, self._a_ggv,
            self._m_igv, self._a_igv,
            SDIRK_A, self.dt, u0, g)
        return np.stack([f1, f2]).reshape(2, 1, -1), u_final

    def neumann_sweep(self, psi0, forcing):
        psi0 = self._to_spatial(np.asarray(psi0, dtype=float))
        forcing = np.asarray(forcing, dtype=float)
        l, dp, sup = self._kn
        msub, mdiag, msup = self._mn
        if self.integrator == "euler":
            trace, psi = _sweeps.euler_neumann_sweep(
                l, dp, sup, msub, mdiag, msup, self._jg,
                psi0, np.ascontiguousarray(np.atleast_2d(forcing)[0]))
        else:
            trace, psi = _sweeps.sdirk2_neumann_sweep(
                l, dp, sup, msub, mdiag, msup, self._jg, SDIRK_A, self.dt,
                psi0,
                np.ascontiguousarray(forcing[0].reshape(-1)),
                np.ascontiguousarray(forcing[1].reshape(-1)))
        return trace.reshape(1, -1), self._from_spatial(psi)
