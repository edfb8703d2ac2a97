import math
import warnings

import numpy as np
import pytest

from catdecay.cat_states import DegenerateNormError, ecs, fock_amplitudes, new_cat, ocs, yss
from catdecay.truncation import TruncationWarning, truncation_rule
from oracles import fock_coherent_linear


def test_norm_example_against_fock_normalization():
    cat = ecs(1.0)
    # 1 / (2 (1 + e^-2)); the value quoted alongside the requirement has a digit slip
    assert cat.norm_A == pytest.approx(0.44039853898894116, rel=1e-15, abs=0)
    # unnormalized |1> + |-1> in the number basis
    v = fock_coherent_linear(1.0, 60) + fock_coherent_linear(-1.0, 60)
    assert 1.0 / np.vdot(v, v).real == pytest.approx(cat.norm_A, rel=1e-14)


@pytest.mark.parametrize("phi", [0.0, 0.5 * math.pi, math.pi, 2.0])
def test_large_amplitude_norm_tends_to_half(phi):
    assert new_cat(7.0, phi).norm_A == pytest.approx(0.5, abs=1e-15)


def test_zero_amplitude_even_cat_is_vacuum():
    cat = ecs(0.0)
    assert cat.norm_A == 0.25
    c = fock_amplitudes(cat, 10)
    assert c[0] == pytest.approx(1.0)
    assert np.all(c[1:] == 0)


def test_named_states():
    assert ecs(1).phi == 0.0
    assert yss(1).phi == pytest.approx(math.pi / 2)
    assert ocs(1).phi == pytest.approx(math.pi)


@pytest.mark.parametrize("alpha", [1e-9, 1e-5, 0.0])
def test_odd_cat_degenerate(alpha):
    with pytest.raises(DegenerateNormError):
        ocs(alpha)


def test_new_cat_degenerate_threshold():
    with pytest.raises(DegenerateNormError):
        new_cat(1e-7, math.pi)
    # just above the guard the odd cat is still a valid (one-photon-like) state
    cat = ocs(1e-3)
    c = fock_amplitudes(cat)
    assert abs(c[1]) == pytest.approx(1.0, abs=1e-6)


def test_ecs_ground_amplitude():
    c0 = fock_amplitudes(ecs(1.0))[0]
    assert c0 == pytest.approx(2 * math.sqrt(ecs(1.0).norm_A) * math.exp(-0.5), rel=1e-15)
    # sqrt(P(0)) with P(0) = 4 A e^-1 from the photon-number formula at tau = 0
    p0 = 4 * ecs(1.0).norm_A * math.exp(-1.0)
    assert c0.real == pytest.approx(math.sqrt(p0), rel=1e-15)
    assert c0.real == pytest.approx(0.80501818219459, abs=1e-13)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5, 1.2 * np.exp(0.7j)])
def test_parity_selection(alpha):
    even = fock_amplitudes(ecs(alpha))
    odd = fock_amplitudes(ocs(alpha))
    assert np.all(np.abs(even[1::2]) < 1e-15)
    assert np.all(np.abs(odd[0::2]) < 1e-15)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("phi", [0.0, math.pi, 0.5 * math.pi, 1.0])
def test_normalization_with_truncation_rule(alpha, phi):
    c = fock_amplitudes(new_cat(alpha, phi))
    assert len(c) == truncation_rule(alpha) + 1
    assert abs(np.vdot(c, c).real - 1.0) < 1e-10


@pytest.mark.parametrize("phi", [0.0, 0.4, math.pi, 2.9])
def test_phase_is_2pi_periodic(phi):
    a = fock_amplitudes(new_cat(1.3, phi))
    b = fock_amplitudes(new_cat(1.3, phi + 2 * math.pi))
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)


def test_truncation_warning():
    with pytest.warns(TruncationWarning):
        fock_amplitudes(ecs(3.0), 5)
    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        fock_amplitudes(ecs(3.0))


def test_cat_is_immutable():
    cat = ecs(1.0)
    with pytest.raises(AttributeError):
        cat.alpha = 2.0
