import math

import numpy as np
import pytest

from catdecay.cat_states import ecs, new_cat, ocs, yss
from catdecay.dynamics import (
    FockDensityMatrix,
    decay,
    density_matrix,
    fock_projector,
    frobenius_distance,
    lindblad_evolve,
    mixture_reference,
    phase_factor,
)
from catdecay.truncation import NMAX_ENV, TruncationWarning, truncation_rule

PHIS = [0.0, math.pi, 0.5 * math.pi]


def test_phase_factor():
    assert phase_factor(1, 1, 0.7) == 0
    assert phase_factor(2, 2, 0.7) == 0
    assert phase_factor(2, 1, 0.7) == 0.7
    assert phase_factor(1, 2, 0.7) == -0.7
    with pytest.raises(IndexError):
        phase_factor(3, 1, 0.7)


def test_decayed_cat_fields():
    dc = decay(ecs(1.0), 0.3)
    assert dc.mu == pytest.approx(math.exp(-0.3), abs=1e-15)
    with pytest.raises(ValueError):
        decay(ecs(1.0), -0.1)


def test_truncation_rule_and_override(monkeypatch):
    assert truncation_rule(2.0) == 40
    assert truncation_rule(5.0) == 85
    monkeypatch.setenv(NMAX_ENV, "7")
    assert truncation_rule(2.0) == 7


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("phi", PHIS)
def test_zero_time_is_pure_projector(alpha, phi):
    from catdecay.cat_states import fock_amplitudes

    cat = new_cat(alpha, phi)
    rho = density_matrix(decay(cat, 0.0))
    c = fock_amplitudes(cat)
    np.testing.assert_allclose(rho.entries, np.outer(c, c.conj()), atol=1e-14)
    assert rho.purity() == pytest.approx(1.0, abs=1e-10)


def test_ecs_parity_zeros():
    rho = density_matrix(decay(ecs(1.0), 0.0)).entries
    assert np.all(np.abs(rho[1::2, :]) < 1e-15)
    assert np.all(np.abs(rho[:, 1::2]) < 1e-15)


def test_long_time_goes_to_vacuum():
    dc = decay(ecs(1.0), 20.0)
    assert density_matrix(dc).entries[0, 0].real > 0.999
    evolved = lindblad_evolve(density_matrix(decay(ecs(1.0), 0.0)), 20.0, 4000)
    assert evolved.entries[0, 0].real > 0.999


@pytest.mark.parametrize("alpha", [0.5, 1.3, 2.5])
@pytest.mark.parametrize("phi", PHIS)
@pytest.mark.parametrize("tau", [0.0, 0.3, 1.7])
def test_matrix_invariants(alpha, phi, tau):
    rho = density_matrix(decay(new_cat(alpha, phi), tau))
    assert rho.hermiticity_error() < 1e-12
    assert abs(rho.trace - 1.0) < 1e-10
    assert np.linalg.eigvalsh(rho.entries).min() >= -1e-9


def test_matrix_is_read_only():
    rho = density_matrix(decay(ecs(1.0), 0.2))
    with pytest.raises(ValueError):
        rho.entries[0, 0] = 3


def test_lindblad_zero_time_and_vacuum_fixed_point():
    rho0 = density_matrix(decay(ecs(1.0), 0.0))
    assert lindblad_evolve(rho0, 0.0, 1) is rho0
    vac = fock_projector(0, 12)
    out = lindblad_evolve(vac, 2.5, 250)
    assert frobenius_distance(out, vac) < 1e-12


def test_lindblad_step_guard():
    rho0 = fock_projector(0, 4)
    with pytest.raises(ValueError):
        lindblad_evolve(rho0, 1.0, 50)
    with pytest.raises(ValueError):
        lindblad_evolve(rho0, 1.0, 0)


def test_lindblad_matches_exact_solution_example():
    cat = ecs(1.0)
    evolved = lindblad_evolve(density_matrix(decay(cat, 0.0)), 0.3, 300)
    assert frobenius_distance(evolved, density_matrix(decay(cat, 0.3))) < 1e-8


@pytest.mark.parametrize("seed", range(6))
def test_exact_solution_property_random(seed):
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(0.1, 2.5)
    phi = PHIS[seed % 3]
    tau = (0.1, 0.3, 1.0)[seed % 3]
    cat = new_cat(alpha, phi)
    evolved = lindblad_evolve(density_matrix(decay(cat, 0.0)), tau, round(tau / 1e-3))
    assert frobenius_distance(evolved, density_matrix(decay(cat, tau))) < 1e-8


@pytest.mark.parametrize("cat", [ecs(1.5), ocs(0.8), yss(2.0)])
def test_semigroup(cat):
    t1, t2 = 0.4, 0.35
    mid = density_matrix(decay(cat, t1))
    evolved = lindblad_evolve(mid, t2, 350)
    assert frobenius_distance(evolved, density_matrix(decay(cat, t1 + t2))) < 1e-8


@pytest.mark.parametrize("cat", [ecs(1.5), ocs(0.8), yss(2.0), new_cat(1.1 - 0.6j, 0.9)])
@pytest.mark.parametrize("tau", [0.2, 1.0, 3.0])
def test_energy_decays_like_mu(cat, tau):
    rho0 = density_matrix(decay(cat, 0.0))
    rho = density_matrix(decay(cat, tau))
    num = np.diag(np.arange(rho.dim, dtype=float))
    assert abs(rho.expect(num) - math.exp(-tau) * rho0.expect(num)) < 1e-10


def test_lindblad_preserves_trace_and_hermiticity():
    rho0 = density_matrix(decay(yss(1.7), 0.0))
    out = lindblad_evolve(rho0, 0.8, 160)
    assert abs(out.trace - 1.0) < 1e-10
    assert out.hermiticity_error() == 0.0


def test_mixture_reference_purity():
    mix = mixture_reference(decay(ecs(1.0), 0.0))
    assert mix.purity() == pytest.approx((1 + math.exp(-4)) / 2, abs=1e-12)
    assert mix.purity() == pytest.approx(0.50916, abs=1e-5)
    assert abs(mix.trace - 1) < 1e-10


def test_mixture_has_no_parity_oscillation():
    dc = decay(ecs(1.2), 0.4)
    diag = mixture_reference(dc).diagonal()
    lam = dc.mu * 1.44
    n = np.arange(len(diag))
    poisson = np.exp(n * math.log(lam) - lam - np.array([math.lgamma(k + 1) for k in n]))
    np.testing.assert_allclose(diag, poisson, atol=1e-15)


def test_deep_decoherence_reaches_mixture():
    dc = decay(ecs(5.0), 0.8)
    assert frobenius_distance(density_matrix(dc), mixture_reference(dc)) < 0.02


def test_frobenius_examples():
    rho = density_matrix(decay(ecs(1.0), 0.2))
    assert frobenius_distance(rho, rho) == 0
    assert frobenius_distance(fock_projector(0, 5), fock_projector(1, 5)) == pytest.approx(math.sqrt(2))
    eps = 1e-3
    bumped = rho.entries.copy()
    bumped[0, 1] += eps
    bumped[1, 0] += eps
    assert frobenius_distance(rho, FockDensityMatrix(bumped)) == pytest.approx(eps * math.sqrt(2), rel=1e-9)
    with pytest.raises(ValueError):
        frobenius_distance(fock_projector(0, 3), fock_projector(0, 4))


def test_json_roundtrip_is_exact():
    rho = density_matrix(decay(yss(1.1 + 0.3j), 0.25))
    text = rho.to_json()
    assert text.startswith('{"dim": ')
    back = FockDensityMatrix.from_json(text)
    assert np.array_equal(back.entries, rho.entries)


def test_truncation_warning_on_density_matrix():
    with pytest.warns(TruncationWarning):
        density_matrix(decay(ecs(2.0), 0.0), 6)
