"""Invariant suite run by ``casimir-rwa check`` and the acceptance tests.

Each check returns a :class:`CheckResult` carrying the measured worst case
and its tolerance.  ``fault=True`` flips the sign of K- wherever the suite
uses it, so the harness itself can be shown to catch a broken operator.
"""

from dataclasses import dataclass

import numpy as np

from . import fock, model, sl2c
from .model import ModelParams


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    measured: float

    @property
    def passed(self):
        return bool(self.measured <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<28s} measured={self.measured:.3e}  tol={self.tolerance:.1e}"


def _kminus(fault):
    if fault:
        return lambda psi: -fock.apply_kminus(psi)
    return fock.apply_kminus


def check_fock_commutators(dim=64, fault=False):
    """Worst residual of the three su(1,1) relations on |n>, n <= D-5."""
    km = _kminus(fault)
    kp, k3 = fock.apply_kplus, fock.apply_k3
    worst = 0.0
    for n in range(dim - 4):
        e = fock.basis(dim, n)
        r1 = k3(kp(e)) - kp(k3(e)) - kp(e)
        r2 = k3(km(e)) - km(k3(e)) + km(e)
        r3 = kp(km(e)) - km(kp(e)) + 2.0 * k3(e)
        worst = max(worst, *(np.abs(r).max() for r in (r1, r2, r3)))
    return CheckResult("fock_commutators", 1e-13, float(worst))


def check_2x2_commutators(fault=False):
    kp, k3 = sl2c.K_PLUS, sl2c.K_3
    km = -sl2c.K_MINUS if fault else sl2c.K_MINUS
    c = sl2c.commutator
    residuals = [c(k3, kp) - kp, c(k3, km) + km, c(kp, km) + 2 * k3]
    return CheckResult("2x2_commutators", 0.0, float(max(np.abs(r).max() for r in residuals)))


def random_cdt(n, seed=0, cd_range=1.5, t_range=2.0):
    """Random (c, d, t) where |alpha| stays O(10) so 1e-12 absolute checks are meaningful."""
    rng = np.random.default_rng(seed)
    c = rng.uniform(-cd_range, cd_range, n)
    d = rng.uniform(-cd_range, cd_range, n)
    t = rng.uniform(-t_range, t_range, n)
    return c, d, t


def check_determinant(n=1000, seed=0):
    worst = 0.0
    for c, d, t in zip(*random_cdt(n, seed)):
        ab = sl2c.alpha_beta(c, d, t)
        worst = max(worst, abs(abs(ab.alpha) ** 2 - ab.beta**2 - 1.0))
    return CheckResult("alpha_beta_determinant", 1e-12, worst)


def check_group_law(n=200, seed=1):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for c, d, t in zip(*random_cdt(n, seed)):
        t2 = rng.uniform(-1.0, 1.0)
        lhs = sl2c.exp_neg_itA(c, d, t) @ sl2c.exp_neg_itA(c, d, t2)
        rhs = sl2c.exp_neg_itA(c, d, t + t2)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return CheckResult("group_law", 1e-10, worst)


def check_gauss(n=200, seed=2):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for c, d, t in zip(*random_cdt(n, seed)):
        m = sl2c.propagator_small(c, d, rng.uniform(0.5, 3.0), t)
        worst = max(worst, float(np.abs(sl2c.gauss_decompose(m).recompose() - m).max()))
    return CheckResult("gauss_recomposition", 1e-12, worst)


def default_params():
    return [ModelParams(1.0, 0.05, eta) for eta in (1.7, 2.0, 2.3)]


def factor_residuals(p, t, step=1e-6):
    """Residuals of the three scalar ODEs that make U(t) solve the RWA equation.

    Returns the K+, K3 and K- coefficient mismatches, each computed by
    central differences.
    """
    lo = model.solution_factors(p, t - step)
    mid = model.solution_factors(p, t)
    hi = model.solution_factors(p, t + step)
    fd = (hi.f - lo.f) / (2 * step)
    gd = (hi.g - lo.g) / (2 * step)
    hd = (hi.h - lo.h) / (2 * step)
    f, g = mid.f, mid.g
    r_plus = fd - gd * f + hd * np.exp(-g) * f * f - p.d * np.exp(-1j * p.eta * t)
    r_3 = 1j * (gd - 2.0 * hd * np.exp(-g) * f) - 2.0 * p.omega0
    r_minus = 1j * hd * np.exp(-g) + 1j * p.d * np.exp(1j * p.eta * t)
    return abs(r_plus), abs(r_3), abs(r_minus)


def check_factor_residuals(params=None, times=None):
    params = params or default_params()
    times = np.linspace(0.1, 10.0, 25) if times is None else times
    worst = max(max(factor_residuals(p, t)) for p in params for t in times)
    return CheckResult("fgh_residuals", 1e-6, float(worst))


def schrodinger_residual(p, psi0, t, step=1e-5, fault=False):
    """|| i dpsi/dt - H_rwa psi || for psi = U(t) psi0, by central differences."""
    lo = model.evolve_analytic(p, psi0, t - step)
    mid = model.evolve_analytic(p, psi0, t)
    hi = model.evolve_analytic(p, psi0, t + step)
    lhs = 1j * (hi - lo) / (2 * step)
    if fault:
        rhs = model.apply_hamiltonian_rwa_su11(p, t, mid)
        rhs += 2j * p.d * np.exp(1j * p.eta * t) * fock.apply_kminus(mid)
    else:
        rhs = model.apply_hamiltonian_rwa(p, t, mid)
    return float(np.linalg.norm(lhs - rhs))


def check_schrodinger(params=None, dim=64, npoints=100, fault=False):
    params = params or default_params()
    times = np.linspace(0.1, 10.0, npoints)
    starts = [fock.vacuum(dim), fock.coherent(dim, 0.5 + 0.3j)]
    worst = max(
        schrodinger_residual(p, psi0, t, fault=fault)
        for p in params
        for psi0 in starts
        for t in times
    )
    return CheckResult("schrodinger_residual", 1e-5, worst)


def run_all(fault=False, dim=64):
    return [
        check_fock_commutators(dim, fault=fault),
        check_2x2_commutators(fault=fault),
        check_determinant(),
        check_group_law(),
        check_gauss(),
        check_factor_residuals(),
        check_schrodinger(dim=dim, fault=fault),
    ]
