import warnings
from math import comb

import numpy as np
import pytest

from casimir_rwa import fock, model, observables, sl2c
from casimir_rwa.errors import SingularAlpha
from casimir_rwa.model import HamiltonianKind, ModelParams
from conftest import random_state

ETAS = [1.7, 2.0, 2.3]


# ------------------------------------------------------------------- params


def test_derived_constants():
    p = ModelParams(1.2, 0.1, 2.0)
    assert p.c == pytest.approx(0.2)
    assert p.d == pytest.approx(0.05)


@pytest.mark.parametrize("kw", [dict(omega0=0, epsilon=0.1, eta=1), dict(omega0=1, epsilon=1.0, eta=1), dict(omega0=1, epsilon=0.1, eta=0)])
def test_invalid_params(kw):
    with pytest.raises(ValueError):
        ModelParams(**kw)


def test_large_epsilon_warns():
    with pytest.warns(UserWarning):
        ModelParams(1.0, 0.5, 2.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ModelParams(1.0, 0.3, 2.0)


# ------------------------------------------------------------ omega and chi


def test_omega_of_t(params):
    assert model.omega_of_t(params, 0.0) == params.omega0
    t = np.pi / (2 * params.eta)
    assert model.omega_of_t(params, t) == pytest.approx(params.omega0 * (1 + params.epsilon))
    ts = np.linspace(0, 5, 11)
    period = 2 * np.pi / params.eta
    np.testing.assert_allclose(model.omega_of_t(params, ts + period), model.omega_of_t(params, ts), atol=1e-12)


def test_chi_exact(params):
    assert model.chi_exact(params, 0.0) == pytest.approx(params.d)
    step = 1e-6
    for t in np.linspace(0.1, 6.0, 13):
        dlog = (np.log(model.omega_of_t(params, t + step)) - np.log(model.omega_of_t(params, t - step))) / (2 * step)
        assert abs(model.chi_exact(params, t) - dlog / 4) < 1e-6
    assert model.chi_exact(ModelParams(1.0, 0.0, 2.0), 0.4) == 0


# ------------------------------------------------------------ Hamiltonians


@pytest.mark.parametrize("kind", list(HamiltonianKind))
def test_free_hamiltonian(kind):
    p = ModelParams(1.3, 0.0, 2.0)
    out = model.apply_hamiltonian(p, kind, 0.7, fock.basis(8, 1))
    np.testing.assert_allclose(out, 1.3 * fock.basis(8, 1), atol=1e-15)


@pytest.mark.parametrize("kind", list(HamiltonianKind))
def test_hermiticity(kind, params, rng):
    dim = 20
    psi = random_state(rng, dim, support=dim - 2)
    phi = random_state(rng, dim, support=dim - 2)
    for t in (0.0, 0.9, 3.4):
        a = fock.inner_product(phi, model.apply_hamiltonian(params, kind, t, psi))
        b = fock.inner_product(psi, model.apply_hamiltonian(params, kind, t, phi))
        assert abs(a - np.conj(b)) < 1e-12


def test_full_on_vacuum(params):
    t = 0.8
    out = model.apply_hamiltonian_full(params, t, fock.vacuum(6))
    # i chi ((a^dag)^2 - a^2)|0> = i chi sqrt(2) |2>
    ad = fock.apply_creation
    expected = 1j * model.chi_exact(params, t) * ad(ad(fock.vacuum(6)))
    np.testing.assert_allclose(out, expected, atol=1e-16)
    assert out[2] == pytest.approx(1j * model.chi_exact(params, t) * np.sqrt(2), abs=1e-16)


def test_approx_equals_full_without_modulation(rng):
    p = ModelParams(1.0, 0.0, 2.0)
    psi = random_state(rng, 12)
    np.testing.assert_array_equal(model.apply_hamiltonian_full(p, 1.1, psi), model.apply_hamiltonian_approx(p, 1.1, psi))


def _max_difference(eps, squeezing_only):
    p = ModelParams(1.0, eps, 2.0)
    ts = np.linspace(0, 2 * np.pi / p.eta, 200)
    if squeezing_only:
        return max(abs(model.chi_exact(p, t) - p.d * np.cos(p.eta * t)) for t in ts)
    worst = 0.0
    for n in range(6):
        e = fock.basis(16, n)
        for t in ts:
            diff = model.apply_hamiltonian_full(p, t, e) - model.apply_hamiltonian_approx(p, t, e)
            worst = max(worst, np.linalg.norm(diff))
    return worst


def test_approx_vs_full_scaling():
    eps = np.array([0.02, 0.04, 0.08])
    chi_gap = np.array([_max_difference(e, True) for e in eps])
    op_gap = np.array([_max_difference(e, False) for e in eps])
    # replacing chi is second order; replacing omega(t) by omega0 is first order
    assert np.polyfit(np.log(eps), np.log(chi_gap), 1)[0] == pytest.approx(2.0, abs=0.1)
    assert np.polyfit(np.log(eps), np.log(op_gap), 1)[0] == pytest.approx(1.0, abs=0.05)


def test_rwa_two_forms_agree(params, rng):
    dim = 30
    for t in (0.0, 1.3, 7.7):
        psi = random_state(rng, dim)
        np.testing.assert_allclose(
            model.apply_hamiltonian_rwa(params, t, psi),
            model.apply_hamiltonian_rwa_su11(params, t, psi),
            atol=1e-12,
        )


def test_counter_rotating_term_at_zero(params):
    dim = 6
    vac = fock.vacuum(dim)
    diff = model.apply_hamiltonian_approx(params, 0.0, vac) - model.apply_hamiltonian_rwa(params, 0.0, vac)
    # neglected piece i (eps eta / 8)(e^{2i eta t}-rotating pair) at t = 0 on |0>
    ad = fock.apply_creation
    expected = 1j * params.epsilon * params.eta / 8 * ad(ad(vac))
    np.testing.assert_allclose(diff, expected, atol=1e-16)


def test_coefficients_vectorised(params):
    ts = np.array([0.0, 0.4, 2.2])
    for kind in HamiltonianKind:
        w, u, v = model.hamiltonian_coefficients(params, kind, ts)
        for i, t in enumerate(ts):
            ws, us, vs = model.hamiltonian_coefficients(params, kind, t)
            assert (w[i], u[i], v[i]) == (ws, us, vs)
            assert v[i] == pytest.approx(np.conj(u[i]))


# -------------------------------------------------------- solution factors


def test_factors_vanish_at_zero(params):
    sf = model.solution_factors(params, 0.0)
    assert (sf.f, sf.g, sf.h) == (0, 0, 0)


def test_factors_without_modulation():
    p = ModelParams(1.0, 0.0, 2.4)
    t = 3.1
    sf = model.solution_factors(p, t)
    assert sf.f == 0 and sf.h == 0
    assert sf.g == pytest.approx(-2j * p.omega0 * t, abs=1e-13)


@pytest.mark.parametrize("eta", ETAS + [0.8])
def test_factor_identity(eta):
    p = ModelParams(1.0, 0.05, eta)
    for t in np.linspace(0.0, 30.0, 31):
        sf = model.solution_factors(p, t)
        assert sf.f * np.exp(1j * p.eta * t) == pytest.approx(-sf.h, abs=1e-15)
        assert abs(sf.alpha) >= 1.0


@pytest.mark.parametrize("eta", ETAS + [0.8, 2.0005])
def test_factor_residuals(eta):
    from casimir_rwa.checks import factor_residuals

    p = ModelParams(1.0, 0.05, eta)
    for t in np.linspace(0.2, 40.0, 23):
        assert max(factor_residuals(p, t)) <= 1e-6


def test_g_continuous_through_windings():
    # eta far from resonance: alpha winds around the origin many times
    p = ModelParams(1.0, 0.05, 0.6)
    ts = np.linspace(0, 60, 6001)
    g = np.array([model.solution_factors(p, t).g for t in ts])
    assert np.abs(np.diff(g)).max() < 0.05


def test_singular_alpha(monkeypatch, params):
    monkeypatch.setattr(sl2c, "alpha_beta", lambda c, d, t: sl2c.AlphaBeta(0j, 1.0, t, c, d))
    with pytest.raises(SingularAlpha):
        model.solution_factors(params, 1.0)
    with pytest.raises(SingularAlpha):
        model.evolve_analytic(params, fock.vacuum(4), 1.0)


# --------------------------------------------------------- analytic evolution


def test_evolve_at_zero(params, rng):
    psi = random_state(rng, 16)
    np.testing.assert_allclose(model.evolve_analytic(params, psi, 0.0), psi, atol=1e-15)


def test_free_evolution_of_one_photon():
    p = ModelParams(1.0, 0.0, 2.0)
    t = 2.6
    out = model.evolve_analytic(p, fock.basis(10, 1), t)
    # e^{i omega0 t/2} e^{g (1 + 1/2)/2} with g = -2i omega0 t
    phase = np.exp(0.5j * t) * np.exp(-2j * t * 0.75)
    assert out[1] == pytest.approx(phase, abs=1e-14)
    assert out[1] == pytest.approx(np.exp(-1j * t), abs=1e-14)


@pytest.mark.parametrize("eta", ETAS)
def test_norm_preserved_from_vacuum(eta):
    p = ModelParams(1.0, 0.05, eta)
    for t in (1.0, 5.0, 10.0, 25.0):
        assert fock.norm(model.evolve_analytic(p, fock.vacuum(128), t)) == pytest.approx(1, abs=1e-9)


def test_overlaps_preserved(params, rng):
    dim = 128
    phi = random_state(rng, dim, support=6)
    psi = random_state(rng, dim, support=6)
    for t in (2.0, 9.0):
        a = fock.inner_product(model.evolve_analytic(params, phi, t), model.evolve_analytic(params, psi, t))
        assert abs(a) == pytest.approx(abs(fock.inner_product(phi, psi)), abs=1e-8)


def test_parity_from_vacuum(params):
    out = model.evolve_analytic(params, fock.vacuum(64), 6.0)
    assert not out[1::2].any()


@pytest.mark.parametrize("eta", ETAS)
def test_schrodinger_residual_general_state(eta):
    from casimir_rwa.checks import schrodinger_residual

    p = ModelParams(1.0, 0.05, eta)
    starts = [fock.basis(64, 3), fock.coherent(64, 0.8j)]
    for psi0 in starts:
        for t in (0.5, 4.0, 9.5):
            assert schrodinger_residual(p, psi0, t) <= 1e-5


# ------------------------------------------------------------ vacuum formula


def test_closed_form_limits(params):
    np.testing.assert_allclose(model.vacuum_solution_closed_form(params, 0.0, 8), fock.vacuum(8), atol=0)
    free = ModelParams(1.0, 0.0, 2.7)
    np.testing.assert_allclose(model.vacuum_solution_closed_form(free, 4.4, 8), fock.vacuum(8), atol=1e-15)


@pytest.mark.parametrize("eta,t", [(1.7, 10.0), (2.0, 10.0), (2.3, 10.0), (0.6, 45.0), (2.0, 60.0)])
def test_closed_form_matches_factorised(eta, t):
    p = ModelParams(1.0, 0.05, eta)
    dim = 256
    a = model.vacuum_solution_closed_form(p, t, dim)
    b = model.evolve_analytic(p, fock.vacuum(dim), t)
    assert np.abs(a - b).max() <= 1e-10


def test_closed_form_binomial_weights():
    p = ModelParams(1.0, 0.1, 1.9)
    t = 5.0
    sf = model.solution_factors(p, t)
    psi = model.vacuum_solution_closed_form(p, t, 30)
    lead = psi[0]
    for n in range(15):
        assert psi[2 * n] == pytest.approx(lead * np.sqrt(comb(2 * n, n)) * (sf.f / 2) ** n, rel=1e-12)


def test_mean_photons_is_beta_squared():
    for eta in ETAS:
        p = ModelParams(1.0, 0.05, eta)
        for t in (0.0, 3.0, 10.0):
            psi = model.vacuum_solution_closed_form(p, t, 256)
            assert observables.mean_photon_number(psi) == pytest.approx(model.mean_photons_closed_form(p, t), abs=1e-8)
    assert model.mean_photons_closed_form(p, 0.0) == 0


def test_resonance_growth():
    p = ModelParams(1.0, 0.05, 2.0)
    ts = np.linspace(0, 80, 41)
    n = np.array([model.mean_photons_closed_form(p, t) for t in ts])
    np.testing.assert_allclose(n, np.sinh(p.d * ts) ** 2, rtol=1e-12, atol=1e-15)
    assert np.all(np.diff(n) > 0)
