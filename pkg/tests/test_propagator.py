import math

import numpy as np
import pytest

from lzdyson.core import ParameterError, Picture, SpinorState, SweepParameters, TimeGrid, picture_transform
from lzdyson.propagator import Method, evolve, survival_probability
from lzdyson.verify import convergence_ratio

P_HALF = math.exp(-math.pi / 2)


@pytest.fixture(scope="module")
def default_run():
    return evolve(0.5, TimeGrid.symmetric(60, 2e-3))


def test_decoupled_levels_stay_put():
    traj = evolve(0.0, TimeGrid.symmetric(10, 1e-2))
    assert np.all(traj.b == 0)
    np.testing.assert_allclose(np.abs(traj.a), 1, atol=1e-13)


def test_endpoint_population_before_averaging(default_run):
    assert abs(abs(default_run.a[-1]) ** 2 - P_HALF) < 2e-2
    assert default_run.max_norm_drift() < 1e-8
    assert not default_run.step_warning


def test_endpoint_stable_under_step_halving(default_run):
    finer = evolve(0.5, TimeGrid.symmetric(60, 1e-3))
    assert abs(abs(finer.a[-1]) ** 2 - abs(default_run.a[-1]) ** 2) < 1e-8


def test_rk4_agrees_with_exp_midpoint():
    grid = TimeGrid.symmetric(20, 1e-3)
    ref = evolve(0.5, grid)
    for picture in Picture:
        rk = evolve(0.5, grid, method=Method.RK4, picture=picture)
        assert abs(abs(rk.a[-1]) ** 2 - abs(ref.a[-1]) ** 2) < 1e-7


def test_rk4_unitarity_interaction_picture():
    traj = evolve(0.5, TimeGrid.symmetric(60, 1e-3), method="rk4", picture="interaction")
    assert traj.max_norm_drift() < 1e-6


def test_rk4_lab_picture_drift_is_bounded_by_amplification_estimate():
    """|R(iy)| = 1 - y^6/144 + ...; summed over the lab-frame steps this bounds the drift."""
    h, T = 1e-3, 60.0
    traj = evolve(0.5, TimeGrid.symmetric(T, h), method="rk4", picture="lab")
    predicted = h**5 / 144 * 2 * T**7 / 7
    assert traj.max_norm_drift() == pytest.approx(predicted, rel=0.05)


def test_picture_equivalence_pointwise(default_run):
    inter = evolve(0.5, TimeGrid.symmetric(60, 2e-3), picture="interaction")
    assert np.max(np.abs(np.abs(default_run.a) - np.abs(inter.a))) < 1e-8


def test_interaction_state_is_transformed_lab_state():
    """Full complex states, not just moduli, from an arbitrary initial state (RK4 on the generator)."""
    grid = TimeGrid(-8, 8, 5e-4)
    s0 = SpinorState(0.6, 0.8j)
    lab = evolve(0.7, grid, initial=s0)
    rk = evolve(0.7, grid, initial=s0, method="rk4", picture="interaction")
    moved = picture_transform(lab.final_state(), grid.nodes()[-1])
    assert abs(moved.a - rk.a[-1]) < 1e-6 and abs(moved.b - rk.b[-1]) < 1e-6


def test_initial_state_in_other_picture_is_transformed():
    grid = TimeGrid(-3, 3, 1e-2)
    s_int = picture_transform(SpinorState(0.6, 0.8j), -3)
    a = evolve(0.3, grid, initial=SpinorState(0.6, 0.8j))
    b = evolve(0.3, grid, initial=s_int)
    np.testing.assert_allclose(a.a, b.a, atol=1e-14)


def test_unnormalized_initial_rejected():
    with pytest.raises(ParameterError):
        evolve(0.5, TimeGrid(0, 1, 0.1), initial=SpinorState(1, 1))


def test_step_warning_flag():
    traj = evolve(0.5, TimeGrid.symmetric(60, 0.5))
    assert traj.step_warning
    assert traj.max_norm_drift() < 1e-12


def test_samples_view():
    traj = evolve(0.2, TimeGrid(0, 0.3, 0.1))
    samples = traj.samples
    assert len(samples) == 4
    assert all(t1 < t2 for (t1, _), (t2, _) in zip(samples, samples[1:]))
    assert samples[0][1] == SpinorState(1, 0, Picture.LAB)


def test_survival_zero_coupling_is_exact():
    r = survival_probability(0.0)
    assert r.p_numeric == 1.0
    assert r.p_analytic == 1.0


@pytest.mark.parametrize("gamma", [0.5, 2.0])
def test_survival_matches_closed_form(gamma):
    r = survival_probability(gamma)
    assert abs(r.p_numeric - math.exp(-math.pi * gamma)) < 1e-2
    assert r.averaging_window >= 10 * 20
    assert 0 <= r.p_numeric <= 1 + 1e-9


def test_survival_window_and_step_convergence():
    """Independent route: the estimate is stable under step halving and window doubling."""
    base = survival_probability(0.5, 60, 2e-3).p_numeric
    half = survival_probability(0.5, 60, 1e-3).p_numeric
    wide = survival_probability(0.5, 120, 2e-3).p_numeric
    # node set of the averaging window shifts with the step
    assert abs(base - half) < 1e-4
    assert abs(wide - P_HALF) < 1e-2
    assert abs(wide - base) < 1e-2


def test_gamma_only_dependence():
    p1 = SweepParameters(alpha=4.0, coupling=2.0, hbar=1.0)
    p2 = SweepParameters(alpha=1.0, coupling=1.0, hbar=1.0)
    p3 = SweepParameters(alpha=0.3, coupling=math.sqrt(0.3 * 0.7), hbar=0.7 / 0.7)
    r1 = survival_probability(p1.gamma, 20.0).p_numeric
    r2 = survival_probability(p2.gamma, 20.0).p_numeric
    assert abs(r1 - r2) <= 1e-10
    assert abs(survival_probability(p3.gamma, 20.0).p_numeric
               - survival_probability(0.7, 20.0).p_numeric) <= 1e-10


def test_monotone_in_gamma():
    ps = [survival_probability(g).p_numeric for g in (0.1, 0.5, 1.0, 2.0)]
    assert all(a > b for a, b in zip(ps, ps[1:]))


def test_second_order_convergence():
    assert convergence_ratio(0.5, 20.0, 2e-2) >= 4.0


def test_survival_rejects_bad_window():
    with pytest.raises(ParameterError):
        survival_probability(0.5, tau_max=0)
