# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Fused 1D time-sweep kernels (tridiagonal Thomas solves).

Single interface unknown, matrices prefactorized by the caller:
``l``/``dp`` are the lower multipliers and pivots of the tridiagonal LU,
``sup`` the (unchanged) superdiagonal; ``msub``/``mdiag``/``msup`` are
the bands of the scaled mass matrix used for the step right-hand side.
"""

import numpy as np


cdef void _tri_matvec(const double[::1] sub, const double[::1] diag, const double[::1] sup,
                      const double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    if n == 1:
        out[0] = diag[0] * x[0]
        return
    out[0] = diag[0] * x[0] + sup[0] * x[1]
    for i in range(1, n - 1):
        out[i] = sub[i - 1] * x[i - 1] + diag[i] * x[i] + sup[i] * x[i + 1]
    out[n - 1] = sub[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1]


cdef void _thomas(const double[::1] l, const double[::1] dp, const double[::1] sup,
                  double[::1] b) noexcept nogil:
    # in-place solve with the prefactored LU
    cdef Py_ssize_t n = b.shape[0]
    cdef Py_ssize_t i
    for i in range(1, n):
        b[i] -= l[i - 1] * b[i - 1]
    b[n - 1] /= dp[n - 1]
    for i in range(n - 2, -1, -1):
        b[i] = (b[i] - sup[i] * b[i + 1]) / dp[i]


def euler_dirichlet_sweep(const double[::1] l, const double[::1] dp, const double[::1] sup,
                          const double[::1] msub, const double[::1] mdiag, const double[::1] msup,
                          Py_ssize_t jc, double c_g1, double c_g0,
                          double fg1, double fg0, double fu1, double fu0,
                          const double[::1] u0, const double[::1] g):
    cdef Py_ssize_t n_steps = g.shape[0] - 1
    u_arr = np.array(u0, dtype=np.float64, copy=True)
    rhs_arr = np.empty_like(u_arr)
    flux_arr = np.empty(n_steps + 1, dtype=np.float64)
    cdef double[::1] u = u_arr
    cdef double[::1] rhs = rhs_arr
    cdef double[::1] flux = flux_arr
    cdef Py_ssize_t n
    cdef double g0v, g1v
    with nogil:
        for n in range(n_steps):
            g0v = g[n]
            g1v = g[n + 1]
            _tri_matvec(msub, mdiag, msup, u, rhs)
            rhs[jc] += c_g1 * g1v + c_g0 * g0v
            _thomas(l, dp, sup, rhs)
            flux[n + 1] = fg1 * g1v + fg0 * g0v + fu1 * rhs[jc] + fu0 * u[jc]
            u[:] = rhs
        flux[0] = flux[1]
    return flux_arr, u_arr


def euler_neumann_sweep(const double[::1] l, const double[::1] dp, const double[::1] sup,
                        const double[::1] msub, const double[::1] mdiag, const double[::1] msup,
                        Py_ssize_t jg,
                        const double[::1] psi0, const double[::1] forcing):
    cdef Py_ssize_t n_steps = forcing.shape[0] - 1
    psi_arr = np.array(psi0, dtype=np.float64, copy=True)
    rhs_arr = np.empty_like(psi_arr)
    trace_arr = np.empty(n_steps + 1, dtype=np.float64)
    cdef double[::1] psi = psi_arr
    cdef double[::1] rhs = rhs_arr
    cdef double[::1] trace = trace_arr
    cdef Py_ssize_t n
    with nogil:
        trace[0] = psi[jg]
        for n in range(n_steps):
            _tri_matvec(msub, mdiag, msup, psi, rhs)
            rhs[jg] += forcing[n + 1]
            _thomas(l, dp, sup, rhs)
            psi[:] = rhs
            trace[n + 1] = psi[jg]
    return trace_arr, psi_arr


def sdirk2_dirichlet_sweep(const double[::1] l, const double[::1] dp, const double[::1] sup,
                           const double[::1] msub, const double[::1] mdiag, const double[::1] msup,
                           Py_ssize_t jc,
                           double m_igv, double a_igv, double m_ggv, double a_ggv,
                           double m_giv, double a_giv,
                           double a, double dt,
                           const double[::1] u0, const double[::1] g):
    cdef Py_ssize_t n_steps = g.shape[0] - 1
    cdef Py_ssize_t size = u0.shape[0]
    u_arr = np.array(u0, dtype=np.float64, copy=True)
    s2_arr = np.empty_like(u_arr)
    rhs_arr = np.empty_like(u_arr)
    f1_arr = np.empty(n_steps + 1, dtype=np.float64)
    f2_arr = np.empty(n_steps + 1, dtype=np.float64)
    cdef double[::1] u = u_arr
    cdef double[::1] s2 = s2_arr
    cdef double[::1] rhs = rhs_arr
    cdef double[::1] f1 = f1_arr
    cdef double[::1] f2 = f2_arr
    cdef Py_ssize_t n, i
    cdef double adt = a * dt
    cdef double c21 = (1.0 - a) / a
    cdef double dg, gdot, ga, k1c, k2c
    with nogil:
        for n in range(n_steps):
            dg = g[n + 1] - g[n]
            gdot = dg / dt
            ga = g[n] + a * dg
            # stage 1
            _tri_matvec(msub, mdiag, msup, u, rhs)
            rhs[jc] += -m_igv * gdot - a_igv * ga
            _thomas(l, dp, sup, rhs)
            k1c = (rhs[jc] - u[jc]) / adt
            f1[n + 1] = m_ggv * gdot + m_giv * k1c + a_ggv * ga + a_giv * rhs[jc]
            for i in range(size):
                s2[i] = u[i] + c21 * (rhs[i] - u[i])
            # stage 2
            _tri_matvec(msub, mdiag, msup, s2, rhs)
            rhs[jc] += -m_igv * gdot - a_igv * g[n + 1]
            _thomas(l, dp, sup, rhs)
            k2c = (rhs[jc] - s2[jc]) / adt
            f2[n + 1] = m_ggv * gdot + m_giv * k2c + a_ggv * g[n + 1] + a_giv * rhs[jc]
            u[:] = rhs
        f1[0] = f1[1]
        f2[0] = f2[1]
    return f1_arr, f2_arr, u_arr


def sdirk2_neumann_sweep(const double[::1] l, const double[::1] dp, const double[::1] sup,
                         const double[::1] msub, const double[::1] mdiag, const double[::1] msup,
                         Py_ssize_t jg, double a, double dt,
                         const double[::1] psi0,
                         const double[::1] forcing1, const double[::1] forcing2):
    cdef Py_ssize_t n_steps = forcing1.shape[0] - 1
    cdef Py_ssize_t size = psi0.shape[0]
    psi_arr = np.array(psi0, dtype=np.float64, copy=True)
    s2_arr = np.empty_like(psi_arr)
    rhs_arr = np.empty_like(psi_arr)
    trace_arr = np.empty(n_steps + 1, dtype=np.float64)
    cdef double[::1] psi = psi_arr
    cdef double[::1] s2 = s2_arr
    cdef double[::1] rhs = rhs_arr
    cdef double[::1] trace = trace_arr
    cdef Py_ssize_t n, i
    cdef double c21 = (1.0 - a) / a
    with nogil:
        trace[0] = psi[jg]
        for n in range(n_steps):
            # stage 1
            _tri_matvec(msub, mdiag, msup, psi, rhs)
            rhs[jg] += forcing1[n + 1]
            _thomas(l, dp, sup, rhs)
            for i in range(size):
                s2[i] = psi[i] + c21 * (rhs[i] - psi[i])
            # stage 2
            _tri_matvec(msub, mdiag, msup, s2, rhs)
            rhs[jg] += forcing2[n + 1]
            _thomas(l, dp, sup, rhs)
            psi[:] = rhs
            trace[n + 1] = psi[jg]
    return trace_arr, psi_arr
