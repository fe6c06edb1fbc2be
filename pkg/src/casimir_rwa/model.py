"""Physics layer: the modulated cavity mode and its analytic RWA evolution.

Three Hamiltonians are provided, all of the quadratic form
``w(t) N + u(t) K+ + v(t) K-``:

``full``
    omega(t) N + i chi(t) ((a^dag)^2 - a^2) with omega(t) = omega0 (1 + eps sin(eta t))
    and chi = (d/dt log omega) / 4.
``approx``
    omega(t) -> omega0 and chi -> (eps eta / 4) cos(eta t).
``rwa``
    the counter-rotating half of the cosine dropped:
    omega0 N + i (eps eta / 8) (e^{-i eta t} (a^dag)^2 - e^{i eta t} a^2).

The RWA model is solved exactly by
``U(t) = e^{i omega0 t/2} exp(f K+) exp(g K3) exp(h K-)`` with
``f = (beta/alpha) e^{-i eta t}``, ``g = -2 (log alpha + i eta t / 2)`` and
``h = -beta/alpha``, where alpha and beta come from :mod:`casimir_rwa.sl2c`.
"""

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from . import fock, kernels, sl2c
from .errors import BadDimension, SingularAlpha

SINGULAR_ALPHA = 1e-12
EPSILON_WARN = 0.3


class HamiltonianKind(str, enum.Enum):
    FULL = "full"
    APPROX = "approx"
    RWA = "rwa"


@dataclass(frozen=True)
class ModelParams:
    omega0: float
    epsilon: float
    eta: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if not 0 <= self.epsilon < 1:
            raise ValueError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.epsilon > EPSILON_WARN:
            warnings.warn(
                f"epsilon = {self.epsilon} is not small; the approximated and "
                "rotating-wave Hamiltonians drift from the full one",
                stacklevel=3,
            )

    @property
    def c(self):
        """Detuning omega0 - eta/2."""
        return self.omega0 - 0.5 * self.eta

    @property
    def d(self):
        """Two-photon coupling eps * eta / 4."""
        return 0.25 * self.epsilon * self.eta


@dataclass(frozen=True)
class SolutionFactors:
    f: complex
    g: complex
    h: complex
    alpha: complex
    beta: float
    t: float


def omega_of_t(p, t):
    return p.omega0 * (1.0 + p.epsilon * np.sin(p.eta * t))


def chi_exact(p, t):
    return p.epsilon * p.eta * np.cos(p.eta * t) / (4.0 * (1.0 + p.epsilon * np.sin(p.eta * t)))


def hamiltonian_coefficients(p, kind, t):
    """``(w, u, v)`` with ``H(t) = w N + u K+ + v K-``; vectorised over ``t``."""
    kind = HamiltonianKind(kind)
    t = np.asarray(t, dtype=np.float64)
    if kind is HamiltonianKind.FULL:
        w = omega_of_t(p, t)
        u = 2j * chi_exact(p, t)
        v = -u
    elif kind is HamiltonianKind.APPROX:
        w = np.full_like(t, p.omega0)
        u = 2j * p.d * np.cos(p.eta * t)
        v = -u
    else:
        w = np.full_like(t, p.omega0)
        u = 1j * p.d * np.exp(-1j * p.eta * t)
        v = -1j * p.d * np.exp(1j * p.eta * t)
    return w, np.asarray(u, dtype=np.complex128), np.asarray(v, dtype=np.complex128)


def apply_hamiltonian(p, kind, t, psi):
    w, u, v = hamiltonian_coefficients(p, kind, t)
    return kernels.apply_quadratic(complex(w), complex(u), complex(v), fock.as_state(psi))


def apply_hamiltonian_full(p, t, psi):
    return apply_hamiltonian(p, HamiltonianKind.FULL, t, psi)


def apply_hamiltonian_approx(p, t, psi):
    return apply_hamiltonian(p, HamiltonianKind.APPROX, t, psi)


def apply_hamiltonian_rwa(p, t, psi):
    return apply_hamiltonian(p, HamiltonianKind.RWA, t, psi)


def apply_hamiltonian_rwa_su11(p, t, psi):
    """The RWA Hamiltonian written through the generators:
    -omega0/2 + 2 omega0 K3 + i d (e^{-i eta t} K+ - e^{i eta t} K-)."""
    psi = fock.as_state(psi)
    out = -0.5 * p.omega0 * psi + 2.0 * p.omega0 * fock.apply_k3(psi)
    out += 1j * p.d * np.exp(-1j * p.eta * t) * fock.apply_kplus(psi)
    out -= 1j * p.d * np.exp(1j * p.eta * t) * fock.apply_kminus(psi)
    return out


def solution_factors(p, t):
    """Disentangling functions f, g, h at time ``t``.

    ``log(alpha)`` is taken on the branch continuous from ``t = 0``.
    """
    c, d = p.c, p.d
    ab = sl2c.alpha_beta(c, d, t)
    if abs(ab.alpha) <= SINGULAR_ALPHA:
        raise SingularAlpha(f"|alpha({t})| = {abs(ab.alpha):.3g}")
    ratio = ab.beta / ab.alpha
    log_a = sl2c.log_alpha(c, d, t)
    f = ratio * np.exp(-1j * p.eta * t)
    g = -2.0 * (log_a + 0.5j * p.eta * t)
    return SolutionFactors(complex(f), complex(g), complex(-ratio), ab.alpha, ab.beta, t)


def evolve_analytic(p, psi0, t, return_leakage=False):
    """U(t) psi0 for the RWA Hamiltonian; the K- factor acts first."""
    sf = solution_factors(p, t)
    psi = fock.exp_kminus_apply(sf.h, psi0)
    psi = fock.exp_k3_apply(sf.g, psi)
    psi, lost = fock.exp_kplus_apply(sf.f, psi, return_leakage=True)
    psi *= np.exp(0.5j * p.omega0 * t)
    return (psi, lost) if return_leakage else psi


def vacuum_solution_closed_form(p, t, dim):
    """Squeezed vacuum U(t)|0> written out amplitude by amplitude."""
    if dim < 2:
        raise BadDimension(f"dim must be >= 2, got {dim}")
    sf = solution_factors(p, t)
    # e^{i c t / 2} / sqrt(alpha), sqrt on the same branch as g
    lead = np.exp(0.5j * p.c * t - 0.5 * sl2c.log_alpha(p.c, p.d, t))
    x = 0.5 * sf.f
    psi = np.zeros(dim, dtype=np.complex128)
    amp = complex(lead)
    for n in range(0, (dim + 1) // 2):
        psi[2 * n] = amp
        # sqrt(C(2n+2, n+1) / C(2n, n)) = sqrt(2 (2n+1) / (n+1))
        amp *= np.sqrt(2.0 * (2 * n + 1) / (n + 1.0)) * x
    return psi


def mean_photons_closed_form(p, t):
    """<N> of the evolved vacuum, which works out to beta(t)**2."""
    sf = solution_factors(p, t)
    return float(sf.beta**2)
