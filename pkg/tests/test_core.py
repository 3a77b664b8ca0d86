import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lzdyson.core import (
    ParameterError,
    Picture,
    SpinorState,
    SweepParameters,
    TimeGrid,
    frame_matrix,
    hamiltonian_interaction,
    hamiltonian_lab,
    picture_transform,
    to_dimensionless,
)

taus = st.floats(-50, 50)
gammas = st.floats(0, 10)


def test_to_dimensionless_zero_coupling():
    assert to_dimensionless(SweepParameters(alpha=1, coupling=0, hbar=1), 3.0) == (3.0, 0.0)


def test_to_dimensionless_substitution():
    tau, gamma = to_dimensionless(SweepParameters(alpha=2, coupling=1, hbar=1), 0.0)
    assert tau == 0.0
    assert gamma == 0.5


def test_time_scaling():
    p = SweepParameters(alpha=4.0, coupling=1.0, hbar=0.25)
    tau, _ = to_dimensionless(p, 1.5)
    assert tau == pytest.approx(1.5 * math.sqrt(4.0 / 0.25), rel=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(alpha=0, coupling=1),
        dict(alpha=-1, coupling=1),
        dict(alpha=1, coupling=-0.5),
        dict(alpha=1, coupling=1, hbar=0),
        dict(alpha=float("nan"), coupling=1),
    ],
)
def test_invalid_parameters_rejected(kwargs):
    with pytest.raises(ParameterError):
        SweepParameters(**kwargs)


def test_hamiltonian_lab_examples():
    np.testing.assert_array_equal(hamiltonian_lab(0, 1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(hamiltonian_lab(5, 0), [[5, 0], [0, -5]])
    np.testing.assert_array_equal(hamiltonian_lab(1, 0.25), [[1, 0.5], [0.5, -1]])


def test_hamiltonian_interaction_examples():
    np.testing.assert_array_equal(hamiltonian_interaction(0, 1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(hamiltonian_interaction(2.3, 0), np.zeros((2, 2)))
    # phase tau^2 = pi/2; the (0, 1) entry carries e^{+i tau^2}
    H = hamiltonian_interaction(math.sqrt(math.pi / 2), 1)
    np.testing.assert_allclose(H, [[0, 1j], [-1j, 0]], atol=1e-15)


@pytest.mark.parametrize("fn", [hamiltonian_lab, hamiltonian_interaction])
def test_negative_gamma_rejected(fn):
    with pytest.raises(ParameterError):
        fn(0.0, -0.1)


@given(taus, gammas)
def test_hamiltonians_hermitian_and_structured(tau, gamma):
    H = hamiltonian_lab(tau, gamma)
    Hi = hamiltonian_interaction(tau, gamma)
    for M in (H, Hi):
        assert np.max(np.abs(M - M.conj().T)) <= 1e-15
    assert H[0, 0] + H[1, 1] == 0
    assert Hi[0, 0] == 0 and Hi[1, 1] == 0
    assert abs(abs(Hi[0, 1]) - math.sqrt(gamma)) <= 1e-15 * max(1.0, math.sqrt(gamma))


def test_frame_identity_random_points():
    """U H U^dagger + i U' U^dagger is the interaction generator at 100 random points."""
    rng = np.random.default_rng(7)
    for tau, gamma in zip(rng.uniform(-30, 30, 100), rng.uniform(0, 5, 100)):
        U = frame_matrix(tau)
        dU = np.diag([1j * tau, -1j * tau]) @ U
        Hbar = U @ hamiltonian_lab(tau, gamma) @ U.conj().T + 1j * dU @ U.conj().T
        np.testing.assert_allclose(Hbar, hamiltonian_interaction(tau, gamma), rtol=0, atol=1e-12)


def test_frame_derivative_matches_finite_difference():
    tau, h = 1.3, 1e-6
    dU = (frame_matrix(tau + h) - frame_matrix(tau - h)) / (2 * h)
    np.testing.assert_allclose(dU, np.diag([1j * tau, -1j * tau]) @ frame_matrix(tau), atol=1e-8)


def test_picture_transform_examples():
    s = picture_transform(SpinorState(1 + 0j, 0j), 12.345)
    assert abs(s.a) == pytest.approx(1.0, abs=1e-15)
    assert s.picture is Picture.INTERACTION

    st0 = SpinorState(1 / math.sqrt(2), 1j / math.sqrt(2))
    same = picture_transform(st0, 0.0)
    assert (same.a, same.b) == (st0.a, st0.b)


@given(taus, st.complex_numbers(max_magnitude=1), st.complex_numbers(max_magnitude=1))
def test_picture_transform_roundtrip_and_moduli(tau, a, b):
    s = SpinorState(a, b)
    there = picture_transform(s, tau)
    assert abs(abs(there.a) - abs(a)) <= 1e-15
    assert abs(abs(there.b) - abs(b)) <= 1e-15
    back = picture_transform(there, tau)
    assert back.picture is Picture.LAB
    assert abs(back.a - a) <= 1e-15 and abs(back.b - b) <= 1e-15


def test_roundtrip_at_example_time():
    s = SpinorState(0.6, 0.8j)
    back = picture_transform(picture_transform(s, 1.7), 1.7)
    assert abs(back.a - s.a) < 1e-15 and abs(back.b - s.b) < 1e-15


def test_time_grid():
    g = TimeGrid(-60, 60, 2e-3)
    assert g.n_steps == 60000
    nodes = g.nodes()
    assert nodes[0] == -60 and nodes[-1] == pytest.approx(60, abs=1e-9)
    assert TimeGrid(0, 1, 0.3).n_steps == 4
    with pytest.raises(ParameterError):
        TimeGrid(1, 1, 0.1)
    with pytest.raises(ParameterError):
        TimeGrid(0, 1, 0)
