"""Single-mode states in a truncated Fock space and the two-photon su(1,1) operators.

A state is a 1-D complex128 array ``amps`` of length ``D >= 2``; ``amps[n]``
is the amplitude of ``|n>``.  All operators act matrix-free with bandwidth
at most two.  Amplitude pushed above ``|D-1>`` is dropped; callers that
care measure it through :func:`truncation_report` or the ``return_leakage``
option of :func:`exp_kplus_apply`.

su(1,1) generators: ``K+ = (a^dag)^2 / 2``, ``K- = a^2 / 2``,
``K3 = (N + 1/2) / 2``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import BadDimension, DimensionMismatch, OverflowRisk

DEFAULT_LEAKAGE_TOL = 1e-8
DEFAULT_DIM = 256

# exp(x) overflows double precision just above x = 709
_EXP_CEILING = 700.0


@dataclass(frozen=True)
class TruncationReport:
    leakage: float
    guard_band: int
    leakage_tol: float = DEFAULT_LEAKAGE_TOL

    @property
    def trustworthy(self):
        return self.leakage <= self.leakage_tol


def default_guard_band(dim):
    return max(1, dim // 10)


def as_state(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim != 1 or psi.shape[0] < 2:
        raise BadDimension(f"Fock state must be 1-D with at least 2 levels, got shape {psi.shape}")
    return psi


def basis(dim, n):
    if dim < 2:
        raise BadDimension(f"dim must be >= 2, got {dim}")
    if not 0 <= n < dim:
        raise ValueError(f"level {n} outside 0..{dim - 1}")
    psi = np.zeros(dim, dtype=np.complex128)
    psi[n] = 1.0
    return psi


def vacuum(dim):
    return basis(dim, 0)


def coherent(dim, z):
    """Truncated coherent state, renormalised after truncation."""
    psi = vacuum(dim)
    for n in range(1, dim):
        psi[n] = psi[n - 1] * z / np.sqrt(n)
    return psi / np.linalg.norm(psi)


# ---------------------------------------------------------------- ladder ops


def apply_annihilation(psi):
    psi = as_state(psi)
    out = np.zeros_like(psi)
    out[:-1] = np.sqrt(np.arange(1, psi.shape[0])) * psi[1:]
    return out


def apply_creation(psi):
    """a^dag psi; the top amplitude psi[D-1] maps out of the space and is lost."""
    psi = as_state(psi)
    out = np.zeros_like(psi)
    out[1:] = np.sqrt(np.arange(1, psi.shape[0])) * psi[:-1]
    return out


def apply_number(psi):
    psi = as_state(psi)
    return np.arange(psi.shape[0]) * psi


def apply_kplus(psi):
    return kernels.apply_quadratic(0.0, 1.0, 0.0, as_state(psi))


def apply_kminus(psi):
    return kernels.apply_quadratic(0.0, 0.0, 1.0, as_state(psi))


def apply_k3(psi):
    psi = as_state(psi)
    return 0.5 * (np.arange(psi.shape[0]) + 0.5) * psi


# -------------------------------------------------------------- exponentials


def exp_k3_apply(g, psi):
    """exp(g K3) psi, exact: amplitude n is scaled by exp(g (n + 1/2) / 2)."""
    psi = as_state(psi)
    dim = psi.shape[0]
    if complex(g).real * (dim - 0.5) / 2.0 > _EXP_CEILING:
        raise OverflowRisk(f"Re(g) = {complex(g).real:.6g} overflows exp(g K3) at D = {dim}")
    return np.exp(g * 0.5 * (np.arange(dim) + 0.5)) * psi


def exp_kplus_apply(f, psi, return_leakage=False):
    """exp(f K+) psi by a Horner-ordered finite series.

    K+ raises by two, so the series is evaluated in a doubled workspace and
    then cut back to D levels.  With ``return_leakage`` the squared norm of
    the discarded amplitudes is returned as well.
    """
    psi = as_state(psi)
    dim = psi.shape[0]
    if f == 0:
        return (psi.copy(), 0.0) if return_leakage else psi.copy()
    work = np.zeros(2 * dim, dtype=np.complex128)
    work[:dim] = psi
    out = kernels.ladder_exp(complex(f), work, True, dim)
    if return_leakage:
        lost = out[dim:]
        return out[:dim].copy(), float(np.vdot(lost, lost).real)
    return out[:dim].copy()


def exp_kminus_apply(h, psi):
    """exp(h K-) psi; terminates after ceil(D/2) terms and cannot leak."""
    psi = as_state(psi)
    if h == 0:
        return psi.copy()
    return kernels.ladder_exp(complex(h), psi, False, (psi.shape[0] + 1) // 2)


# ------------------------------------------------------------ inner products


def _check_dims(psi, phi):
    if psi.shape != phi.shape:
        raise DimensionMismatch(f"dimensions differ: {psi.shape[0]} vs {phi.shape[0]}")


def inner_product(psi, phi):
    """<psi|phi>, conjugate-linear in ``psi``."""
    psi, phi = as_state(psi), as_state(phi)
    _check_dims(psi, phi)
    return complex(np.vdot(psi, phi))


def norm(psi):
    psi = as_state(psi)
    return float(np.sqrt(np.vdot(psi, psi).real))


def fidelity(psi, phi):
    psi, phi = as_state(psi), as_state(phi)
    _check_dims(psi, phi)
    overlap = abs(np.vdot(psi, phi)) ** 2
    return float(min(1.0, overlap / (np.vdot(psi, psi).real * np.vdot(phi, phi).real)))


def truncation_report(psi, guard_band: Optional[int] = None, leakage_tol=DEFAULT_LEAKAGE_TOL, dropped=0.0):
    """Probability in the top ``guard_band`` levels plus any known dropped mass."""
    psi = as_state(psi)
    dim = psi.shape[0]
    if guard_band is None:
        guard_band = default_guard_band(dim)
    if not 1 <= guard_band <= dim:
        raise ValueError(f"guard_band must lie in 1..{dim}, got {guard_band}")
    top = psi[dim - guard_band:]
    mass = float(np.vdot(top, top).real / max(np.vdot(psi, psi).real, np.finfo(float).tiny))
    return TruncationReport(min(1.0, mass + dropped), guard_band, leakage_tol)
