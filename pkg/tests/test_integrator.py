import numpy as np
import pytest

from casimir_rwa import fock, kernels, model
from casimir_rwa.errors import NormDrift
from casimir_rwa.integrator import IntegrationConfig, default_dt, integrate, step_count
from casimir_rwa.model import HamiltonianKind, ModelParams


def test_config_validation():
    with pytest.raises(ValueError):
        IntegrationConfig(t_final=-1.0)
    with pytest.raises(ValueError):
        IntegrationConfig(t_final=1.0, dt=0.0)
    with pytest.raises(ValueError):
        IntegrationConfig(t_final=1.0, record_stride=0)
    assert IntegrationConfig(1.0, "approx").hamiltonian_kind is HamiltonianKind.APPROX


def test_default_dt():
    p = ModelParams(1.0, 0.05, 2.0)
    assert default_dt(p, 256) == pytest.approx(0.1 / 256)
    assert default_dt(p, 4) == pytest.approx(1e-3 * np.pi)


def test_step_count():
    assert step_count(10.0, 0.1) == 100
    assert step_count(1.0, 0.3) == 3
    assert step_count(0.0, 0.1) == 0


@pytest.mark.parametrize("kind", list(HamiltonianKind))
def test_free_one_photon_phase(kind):
    p = ModelParams(1.0, 0.0, 2.0)
    traj = integrate(p, fock.basis(16, 1), IntegrationConfig(10.0, kind, dt=1e-3, record_stride=1000))
    assert np.abs(traj.final - np.exp(-10j) * fock.basis(16, 1)).max() <= 1e-8
    np.testing.assert_allclose(traj.times, np.arange(11.0), atol=1e-12)


@pytest.mark.parametrize("eta", [1.7, 2.0, 2.3])
def test_rwa_matches_analytic(eta):
    p = ModelParams(1.0, 0.05, eta)
    dim = 128
    traj = integrate(p, fock.vacuum(dim), IntegrationConfig(10.0, dt=0.01, record_stride=100))
    for t, state in zip(traj.times, traj.states):
        exact = model.evolve_analytic(p, fock.vacuum(dim), t)
        assert fock.fidelity(exact, state) >= 1 - 1e-8


def test_fourth_order_convergence():
    p = ModelParams(1.0, 0.05, 2.0)
    dim = 32
    psi0 = fock.vacuum(dim)
    exact = model.evolve_analytic(p, psi0, 10.0)
    errs = [np.linalg.norm(integrate(p, psi0, IntegrationConfig(10.0, dt=dt)).final - exact) for dt in (0.1, 0.05)]
    assert 12.0 <= errs[0] / errs[1] <= 20.0


def test_norm_recorded_without_renormalisation():
    p = ModelParams(1.0, 0.05, 2.0)
    traj = integrate(p, fock.vacuum(64), IntegrationConfig(20.0, dt=0.01, record_stride=50))
    assert np.abs(traj.norms - 1.0).max() <= 1e-6
    assert traj.norms[-1] != 1.0


def test_time_reversal():
    p = ModelParams(1.0, 0.05, 2.3)
    dim = 64
    psi0 = fock.coherent(dim, 0.3 - 0.2j)
    T = 8.0
    fwd = integrate(p, psi0, IntegrationConfig(T, dt=0.005))
    back = integrate(p, fwd.final, IntegrationConfig(T, dt=0.005, t_start=T, reverse=True, record_stride=400))
    assert back.times[0] == T and back.times[-1] == pytest.approx(0.0, abs=1e-12)
    assert np.all(np.diff(back.times) < 0)
    assert fock.fidelity(psi0, back.final) >= 1 - 1e-6


def test_richardson_estimate_small():
    p = ModelParams(1.0, 0.05, 1.7)
    psi0 = fock.vacuum(64)
    coarse = integrate(p, psi0, IntegrationConfig(10.0, dt=0.02)).final
    fine = integrate(p, psi0, IntegrationConfig(10.0, dt=0.01)).final
    assert np.linalg.norm(coarse - fine) / 15.0 <= 1e-6


@pytest.mark.parametrize("t_final,dt,stride", [(10.0, 0.1, 7), (1.0, 0.1, 1), (5.0, 0.05, 100), (0.25, 0.1, 1)])
def test_record_count(t_final, dt, stride):
    p = ModelParams(1.0, 0.05, 2.0)
    traj = integrate(p, fock.vacuum(16), IntegrationConfig(t_final, dt=dt, record_stride=stride))
    assert len(traj) == step_count(t_final, dt) // stride + 1
    assert traj.t_end == pytest.approx(step_count(t_final, dt) * dt)
    assert len(traj.leakage) == len(traj)


def test_norm_drift_raises_with_partial_trajectory():
    p = ModelParams(1.0, 0.05, 2.0)
    # dt far beyond the RK4 stability limit for D = 64
    cfg = IntegrationConfig(50.0, dt=0.2, record_stride=1)
    with pytest.raises(NormDrift) as info:
        integrate(p, fock.coherent(64, 2.0), cfg)
    traj = info.value.trajectory
    assert 1 <= len(traj) < 251
    assert abs(traj.norms[-1] - 1.0) > 1e-4
    assert np.all(np.abs(traj.norms[:-1] - 1.0) <= 1e-4)
    assert traj.t_end == traj.times[-1]


def test_truncation_flag_on_overfull_basis():
    p = ModelParams(1.0, 0.2, 2.0)
    traj = integrate(p, fock.vacuum(12), IntegrationConfig(10.0, dt=0.01, record_stride=500, guard_band=4))
    assert traj.leakage[0].trustworthy
    assert not traj.leakage[-1].trustworthy


def test_pure_backend_matches(monkeypatch):
    p = ModelParams(1.0, 0.05, 2.0)
    cfg = IntegrationConfig(2.0, dt=0.01, record_stride=50)
    ref = integrate(p, fock.vacuum(32), cfg)
    monkeypatch.setattr(kernels, "rk4_propagate", kernels.python_backend.rk4_propagate)
    pure = integrate(p, fock.vacuum(32), cfg)
    np.testing.assert_allclose(pure.states, ref.states, atol=1e-13)
