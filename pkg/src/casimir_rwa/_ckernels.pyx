# cython: language_level=3
"""Compiled kernels: banded quadratic-Hamiltonian action, Horner ladder
exponentials and the RK4 time loop.  Mirrors ``_pykernels`` exactly."""

import numpy as np

from libc.math cimport sqrt, fabs


cdef void _band(Py_ssize_t dim, double[::1] kp, double[::1] km) noexcept nogil:
    cdef Py_ssize_t n
    for n in range(dim):
        kp[n] = 0.5 * sqrt(n * (n - 1.0)) if n >= 2 else 0.0
        km[n] = 0.5 * sqrt((n + 1.0) * (n + 2.0)) if n + 2 < dim else 0.0


def band_coefficients(Py_ssize_t dim):
    kp = np.empty(dim, dtype=np.float64)
    km = np.empty(dim, dtype=np.float64)
    _band(dim, kp, km)
    return kp, km


cdef inline void _apply(Py_ssize_t dim, double complex w, double complex u,
                        double complex v, const double[::1] kp,
                        const double[::1] km, const double complex[::1] y,
                        double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t n
    cdef double complex acc
    for n in range(dim):
        acc = w * n * y[n]
        if n >= 2:
            acc = acc + u * kp[n] * y[n - 2]
        if n + 2 < dim:
            acc = acc + v * km[n] * y[n + 2]
        out[n] = acc


def apply_quadratic(double complex w, double complex u, double complex v,
                    psi, out=None):
    cdef const double complex[::1] y = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t dim = y.shape[0]
    if out is None:
        out = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] o = out
    kp, km = band_coefficients(dim)
    cdef const double[::1] kpv = kp
    cdef const double[::1] kmv = km
    with nogil:
        _apply(dim, w, u, v, kpv, kmv, y, o)
    return out


def ladder_exp(double complex x, psi, bint raising, Py_ssize_t nterms):
    cdef const double complex[::1] p = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t dim = p.shape[0]
    r_arr = np.array(p, dtype=np.complex128)
    tmp_arr = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] r = r_arr
    cdef double complex[::1] tmp = tmp_arr
    kp, km = band_coefficients(dim)
    cdef const double[::1] kpv = kp
    cdef const double[::1] kmv = km
    cdef Py_ssize_t k, n
    cdef double complex s
    with nogil:
        for k in range(nterms, 0, -1):
            s = x / <double>k
            if raising:
                for n in range(dim):
                    tmp[n] = kpv[n] * r[n - 2] if n >= 2 else 0.0
            else:
                for n in range(dim):
                    tmp[n] = kmv[n] * r[n + 2] if n + 2 < dim else 0.0
            for n in range(dim):
                r[n] = p[n] + s * tmp[n]
    return r_arr


def rk4_propagate(psi0, w_in, u_in, v_in, double dt, Py_ssize_t stride,
                  double drift_tol):
    cdef const double[::1] w = np.ascontiguousarray(w_in, dtype=np.float64)
    cdef const double complex[::1] u = np.ascontiguousarray(u_in, dtype=np.complex128)
    cdef const double complex[::1] v = np.ascontiguousarray(v_in, dtype=np.complex128)
    cdef Py_ssize_t dim = len(psi0)
    cdef Py_ssize_t nsteps = (w.shape[0] - 1) // 2
    cdef Py_ssize_t nrec = nsteps // stride + 1
    states_arr = np.zeros((nrec, dim), dtype=np.complex128)
    cdef double complex[:, ::1] states = states_arr
    psi_arr = np.array(psi0, dtype=np.complex128)
    cdef double complex[::1] psi = psi_arr
    bufs = np.empty((5, dim), dtype=np.complex128)
    cdef double complex[::1] k1 = bufs[0]
    cdef double complex[::1] k2 = bufs[1]
    cdef double complex[::1] k3 = bufs[2]
    cdef double complex[::1] k4 = bufs[3]
    cdef double complex[::1] y = bufs[4]
    kp, km = band_coefficients(dim)
    cdef const double[::1] kpv = kp
    cdef const double[::1] kmv = km
    cdef Py_ssize_t step, j, n, rec = 1
    cdef double half = 0.5 * dt, sixth = dt / 6.0, nrm
    cdef double complex mi = -1j
    states[0, :] = psi
    with nogil:
        for step in range(nsteps):
            j = 2 * step
            _apply(dim, w[j], u[j], v[j], kpv, kmv, psi, k1)
            for n in range(dim):
                k1[n] = mi * k1[n]
                y[n] = psi[n] + half * k1[n]
            _apply(dim, w[j + 1], u[j + 1], v[j + 1], kpv, kmv, y, k2)
            for n in range(dim):
                k2[n] = mi * k2[n]
                y[n] = psi[n] + half * k2[n]
            _apply(dim, w[j + 1], u[j + 1], v[j + 1], kpv, kmv, y, k3)
            for n in range(dim):
                k3[n] = mi * k3[n]
                y[n] = psi[n] + dt * k3[n]
            _apply(dim, w[j + 2], u[j + 2], v[j + 2], kpv, kmv, y, k4)
            for n in range(dim):
                psi[n] = psi[n] + sixth * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n]
                                           + mi * k4[n])
            if (step + 1) % stride == 0:
                nrm = 0.0
                for n in range(dim):
                    states[rec, n] = psi[n]
                    nrm += psi[n].real * psi[n].real + psi[n].imag * psi[n].imag
                rec += 1
                nrm = sqrt(nrm)
                if not fabs(nrm - 1.0) <= drift_tol:
                    break
    return states_arr, rec, psi_arr
