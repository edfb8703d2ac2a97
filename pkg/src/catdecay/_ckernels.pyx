# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt, lgamma, M_PI

cnp.import_array()

ctypedef double complex cplx


cdef inline void _rhs(cplx[:, ::1] rho, cplx[:, ::1] out, double[::1] sq, Py_ssize_t dim) noexcept nogil:
    cdef Py_ssize_t m, n
    for m in range(dim):
        for n in range(dim):
            out[m, n] = -0.5 * (m + n) * rho[m, n]
            if m + 1 < dim and n + 1 < dim:
                out[m, n] = out[m, n] + sq[m] * sq[n] * rho[m + 1, n + 1]


def damping_rk4(rho0, double dt, long steps):
    cdef cnp.ndarray[cplx, ndim=2] arr = np.array(rho0, dtype=np.complex128, order="C", copy=True)
    cdef cplx[:, ::1] rho = arr
    cdef Py_ssize_t dim = rho.shape[0]
    cdef cplx[:, ::1] k1 = np.empty((dim, dim), dtype=np.complex128)
    cdef cplx[:, ::1] k2 = np.empty((dim, dim), dtype=np.complex128)
    cdef cplx[:, ::1] k3 = np.empty((dim, dim), dtype=np.complex128)
    cdef cplx[:, ::1] k4 = np.empty((dim, dim), dtype=np.complex128)
    cdef cplx[:, ::1] tmp = np.empty((dim, dim), dtype=np.complex128)
    cdef double[::1] sq = np.sqrt(np.arange(1, dim + 1, dtype=np.float64))
    cdef Py_ssize_t s, m, n
    cdef cplx a, b
    with nogil:
        for s in range(steps):
            _rhs(rho, k1, sq, dim)
            for m in range(dim):
                for n in range(dim):
                    tmp[m, n] = rho[m, n] + 0.5 * dt * k1[m, n]
            _rhs(tmp, k2, sq, dim)
            for m in range(dim):
                for n in range(dim):
                    tmp[m, n] = rho[m, n] + 0.5 * dt * k2[m, n]
            _rhs(tmp, k3, sq, dim)
            for m in range(dim):
                for n in range(dim):
                    tmp[m, n] = rho[m, n] + dt * k3[m, n]
            _rhs(tmp, k4, sq, dim)
            for m in range(dim):
                for n in range(dim):
                    rho[m, n] = rho[m, n] + (dt / 6.0) * (k1[m, n] + 2.0 * k2[m, n] + 2.0 * k3[m, n] + k4[m, n])
            for m in range(dim):
                for n in range(m, dim):
                    a = rho[m, n]
                    b = rho[n, m]
                    rho[m, n] = 0.5 * (a + b.conjugate())
                    rho[n, m] = rho[m, n].conjugate()
    return arr


def series_wigner(weights, amp_n, amp_m, beta, long cutoff):
    cdef const cplx[::1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef const cplx[::1] p = np.ascontiguousarray(amp_n, dtype=np.complex128)
    cdef const cplx[::1] q = np.ascontiguousarray(amp_m, dtype=np.complex128)
    cdef Py_ssize_t nt = w.shape[0]
    cdef cplx b = beta
    cdef double x = 2.0 * (b.real * b.real + b.imag * b.imag)
    cdef cplx bc = b.conjugate()
    cdef Py_ssize_t t, d, m
    cdef cplx c0, c, u, acc_d
    cdef double lprev, lcur, lnext, total = 0.0
    for d in range(cutoff + 1):
        acc_d = 0.0
        for t in range(nt):
            # 2 w_t (2 p_t conj(beta))^d / d!
            c0 = 2.0 * w[t]
            for m in range(1, d + 1):
                c0 = c0 * (2.0 * p[t] * bc) / m
            u = -2.0 * p[t] * q[t]
            c = c0
            lprev = 0.0
            lcur = 1.0
            for m in range(cutoff - d + 1):
                acc_d = acc_d + c * lcur
                lnext = ((2 * m + 1 + d - x) * lcur - (m + d) * lprev) / (m + 1)
                lprev = lcur
                lcur = lnext
                c = c * u / (m + d + 1)
        if d == 0:
            total += acc_d.real
        else:
            total += 2.0 * acc_d.real
    return exp(-x) / M_PI * total


def parity_wigner(rho_in, beta):
    cdef const cplx[:, ::1] rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef Py_ssize_t dim = rho.shape[0]
    cdef cplx g = 2.0 * beta
    cdef double r = sqrt(g.real * g.real + g.imag * g.imag)
    cdef double x = r * r
    cdef double log_g = log(r) if r > 0 else 0.0
    cdef cplx ph = g / r if r > 0 else 1.0
    cdef cplx phd = -ph.conjugate()
    cdef cplx up, down, acc = 0.0
    cdef Py_ssize_t d, m
    cdef double lprev, lcur, lnext, s, sign
    for d in range(dim):
        if r == 0 and d > 0:
            break
        up = 1.0
        down = 1.0
        for m in range(d):
            up = up * ph
            down = down * phd
        lprev = 0.0
        lcur = 1.0
        for m in range(dim - d):
            s = exp(0.5 * (lgamma(m + 1.0) - lgamma(m + d + 1.0)) + d * log_g - 0.5 * x) * lcur
            sign = -1.0 if (m % 2) else 1.0
            acc = acc + sign * rho[m, m + d] * up * s
            if d > 0:
                if d % 2:
                    acc = acc - sign * rho[m + d, m] * down * s
                else:
                    acc = acc + sign * rho[m + d, m] * down * s
            lnext = ((2 * m + 1 + d - x) * lcur - (m + d) * lprev) / (m + 1)
            lprev = lcur
            lcur = lnext
    return 2.0 / M_PI * acc.real
