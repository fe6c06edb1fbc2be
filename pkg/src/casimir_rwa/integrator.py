"""Brute-force oracle: fixed-step RK4 for ``i dpsi/dt = H(t) psi`` in a truncated Fock basis.

The Hamiltonian coefficients are tabulated on the half-step grid up front and
the time loop runs inside :mod:`casimir_rwa.kernels`.  Nothing is
renormalised; the norm is recorded so drift stays visible.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import fock, kernels
from .errors import NormDrift
from .model import HamiltonianKind, hamiltonian_coefficients

NORM_DRIFT_TOL = 1e-4


def default_dt(p, dim):
    """Smaller of one thousandth of a drive period and 0.1 / (omega0 D)."""
    return min(1e-3 * 2.0 * np.pi / p.eta, 0.1 / (p.omega0 * dim))


@dataclass
class IntegrationConfig:
    t_final: float
    hamiltonian_kind: HamiltonianKind = HamiltonianKind.RWA
    dt: Optional[float] = None
    record_stride: int = 1
    t_start: float = 0.0
    # integrate from t_start towards t_start - t_final
    reverse: bool = False
    guard_band: Optional[int] = None
    leakage_tol: float = fock.DEFAULT_LEAKAGE_TOL
    drift_tol: float = NORM_DRIFT_TOL

    def __post_init__(self):
        self.hamiltonian_kind = HamiltonianKind(self.hamiltonian_kind)
        if self.t_final < 0:
            raise ValueError(f"t_final must be >= 0, got {self.t_final}")
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.record_stride < 1:
            raise ValueError(f"record_stride must be >= 1, got {self.record_stride}")


@dataclass
class Trajectory:
    """Recorded states; ``times`` decrease for reverse-time runs."""

    times: np.ndarray
    states: np.ndarray
    norms: np.ndarray
    leakage: List[fock.TruncationReport] = field(default_factory=list)
    # state after the last step, which need not fall on a record point
    final: Optional[np.ndarray] = None
    t_end: Optional[float] = None

    def __len__(self):
        return len(self.times)


def step_count(t_final, dt):
    ratio = t_final / dt
    nearest = round(ratio)
    if abs(ratio - nearest) <= 1e-9 * max(1.0, ratio):
        return int(nearest)
    return int(np.floor(ratio))


def integrate(p, psi0, cfg):
    """Integrate from ``psi0`` and return the recorded :class:`Trajectory`.

    Raises
    ------
    NormDrift
        When a recorded norm leaves ``1 +- cfg.drift_tol``; the partial
        trajectory is attached to the exception.
    """
    psi0 = fock.as_state(psi0)
    dim = psi0.shape[0]
    dt = cfg.dt if cfg.dt is not None else default_dt(p, dim)
    nsteps = step_count(cfg.t_final, dt)
    sign = -1.0 if cfg.reverse else 1.0
    grid = cfg.t_start + sign * 0.5 * dt * np.arange(2 * nsteps + 1)
    w, u, v = hamiltonian_coefficients(p, cfg.hamiltonian_kind, grid)

    states, filled, last = kernels.rk4_propagate(
        psi0, w, u, v, sign * dt, cfg.record_stride, cfg.drift_tol
    )
    states = states[:filled]
    steps = np.arange(filled) * cfg.record_stride
    times = cfg.t_start + sign * dt * steps
    norms = np.sqrt(np.einsum("ij,ij->i", states.conj(), states).real)
    reports = [fock.truncation_report(s, cfg.guard_band, cfg.leakage_tol) for s in states]
    drifted = not abs(norms[-1] - 1.0) <= cfg.drift_tol
    t_end = times[-1] if drifted else cfg.t_start + sign * dt * nsteps
    traj = Trajectory(times, states, norms, reports, np.array(last), float(t_end))
    if drifted:
        raise NormDrift(
            f"norm {norms[-1]!r} at t = {times[-1]:.6g} left 1 +- {cfg.drift_tol:g}",
            trajectory=traj,
        )
    return traj
