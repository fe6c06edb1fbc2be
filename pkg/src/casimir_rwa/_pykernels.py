"""Pure numpy kernels, used when the compiled extension is unavailable.

Every function here has an identically named twin in ``_ckernels.pyx``;
the two are tested against each other.  States are 1-D complex128 arrays
indexed by photon number.  A quadratic Hamiltonian is represented by
three scalars ``w, u, v`` meaning ``w*N + u*K+ + v*K-``.
"""

import numpy as np


def band_coefficients(dim):
    """Matrix elements of K+ and K- in a truncated Fock basis.

    ``kp[n]`` is <n|K+|n-2> and ``km[n]`` is <n|K-|n+2>; entries that would
    reference a level outside ``0..dim-1`` are zero.
    """
    n = np.arange(dim, dtype=np.float64)
    kp = 0.5 * np.sqrt(n * np.maximum(n - 1.0, 0.0))
    km = np.zeros(dim)
    km[: dim - 2] = 0.5 * np.sqrt((n[: dim - 2] + 1.0) * (n[: dim - 2] + 2.0))
    return kp, km


def apply_quadratic(w, u, v, psi, out=None):
    dim = psi.shape[0]
    kp, km = band_coefficients(dim)
    if out is None:
        out = np.empty(dim, dtype=np.complex128)
    n = np.arange(dim, dtype=np.float64)
    out[:] = w * n * psi
    out[2:] += u * kp[2:] * psi[:-2]
    out[:-2] += v * km[:-2] * psi[2:]
    return out


def ladder_exp(x, psi, raising, nterms):
    """Horner evaluation of sum_k x^k/k! K^k psi for K = K+ (raising) or K-."""
    dim = psi.shape[0]
    kp, km = band_coefficients(dim)
    psi = np.asarray(psi, dtype=np.complex128)
    r = psi.copy()
    tmp = np.empty_like(r)
    for k in range(nterms, 0, -1):
        s = x / k
        tmp[:] = 0.0
        if raising:
            tmp[2:] = kp[2:] * r[:-2]
        else:
            tmp[:-2] = km[:-2] * r[2:]
        r = psi + s * tmp
    return r


def rk4_propagate(psi0, w, u, v, dt, stride, drift_tol):
    """Fixed-step RK4 for i dpsi/dt = H(t) psi.

    ``w, u, v`` hold the Hamiltonian coefficients on the half-step grid
    ``t0 + k*dt/2`` for ``k = 0..2M``.  States are stored every ``stride``
    steps, starting with ``psi0``.  Returns ``(states, filled, last)`` where
    ``last`` is the state after the final step taken.  ``filled`` falls short
    of ``len(states)`` when the norm left ``1 +- drift_tol`` at a record
    point, and integration stops there.
    """
    dim = psi0.shape[0]
    nsteps = (w.shape[0] - 1) // 2
    nrec = nsteps // stride + 1
    states = np.zeros((nrec, dim), dtype=np.complex128)
    kp, km = band_coefficients(dim)
    kp2 = kp[2:]
    km2 = km[:-2]
    n = np.arange(dim, dtype=np.float64)

    def rhs(j, y, out):
        # out = -i * H(t_j) y
        out[:] = w[j] * n * y
        out[2:] += u[j] * kp2 * y[:-2]
        out[:-2] += v[j] * km2 * y[2:]
        out *= -1j
        return out

    psi = np.array(psi0, dtype=np.complex128)
    states[0] = psi
    k1 = np.empty(dim, dtype=np.complex128)
    k2 = np.empty_like(k1)
    k3 = np.empty_like(k1)
    k4 = np.empty_like(k1)
    half = 0.5 * dt
    rec = 1
    for step in range(nsteps):
        j = 2 * step
        rhs(j, psi, k1)
        rhs(j + 1, psi + half * k1, k2)
        rhs(j + 1, psi + half * k2, k3)
        rhs(j + 2, psi + dt * k3, k4)
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (step + 1) % stride == 0:
            states[rec] = psi
            rec += 1
            nrm = np.sqrt(np.vdot(psi, psi).real)
            if not abs(nrm - 1.0) <= drift_tol:
                return states, rec, psi
    return states, rec, psi
