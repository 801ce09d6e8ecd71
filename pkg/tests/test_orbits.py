import math

import pytest
from hypothesis import given, strategies as st

from oddeven.exceptions import DomainError
from oddeven.orbits import (
    Branch,
    PhaseAngles,
    Regime,
    analytic_even_odd_spectrum,
    analytic_point,
    analytic_ratio,
    burst_pair,
    classify_regime,
    coefficient_c,
    cutoff_trajectory,
    disorder_threshold,
    extrema,
    harmonic_coefficients,
    harmonic_return_energy,
    recombination_phase,
    return_condition,
    reversal_points,
    solve_return,
)

C = 2.558


def test_cutoff_trajectory():
    trajectory = cutoff_trajectory()

    assert trajectory.ionization_phase == pytest.approx(0.31, abs=0.02)
    assert trajectory.recombination_phase == pytest.approx(4.40, abs=0.05)
    assert trajectory.return_kinetic_energy == pytest.approx(3.17, abs=0.01)
    assert trajectory.angles.theta == pytest.approx(2.36, abs=0.03)
    assert trajectory.angles.delta_theta == pytest.approx(2.05, abs=0.03)
    assert trajectory.residual < 1e-10
    assert trajectory.branch is Branch.CUTOFF


def test_cutoff_coefficient_magnitude():
    coefficient = cutoff_trajectory().coefficient

    assert coefficient.magnitude == pytest.approx(C, rel=0.02)


def test_coefficient_formula():
    angles = PhaseAngles(theta=math.pi / 2, delta_theta=math.pi)

    assert coefficient_c(angles).value == pytest.approx(2.0 * (math.pi * -1.0 - 0.0))
    with pytest.raises(DomainError):
        PhaseAngles(theta=1.0, delta_theta=0.0)


@given(st.floats(min_value=0.05, max_value=1.5))
def test_recombination_phase_solves_the_return_condition(phase):
    returned = recombination_phase(phase)

    assert returned > phase
    assert abs(return_condition(phase, returned)) < 1e-10


def test_two_branches_below_the_cutoff():
    short, long = solve_return(2.0)

    assert short.branch is Branch.SHORT
    assert long.branch is Branch.LONG
    assert short.return_kinetic_energy == pytest.approx(2.0, abs=1e-9)
    assert long.return_kinetic_energy == pytest.approx(2.0, abs=1e-9)
    assert long.ionization_phase < cutoff_trajectory().ionization_phase < short.ionization_phase
    assert short.recombination_phase < long.recombination_phase
    assert short.residual < 1e-10
    assert long.residual < 1e-10


@pytest.mark.parametrize("energy", [0.0, -1.0, 3.2, 10.0])
def test_return_energy_outside_the_classical_range(energy):
    with pytest.raises(DomainError):
        solve_return(energy)


def test_reversal_points():
    points = reversal_points(C, 3)

    assert points == pytest.approx([0.307, 0.921, 1.535, 2.149], abs=1e-3)
    assert reversal_points(-C, 3) == points
    for gamma in points:
        assert analytic_ratio(gamma, C) == pytest.approx(1.0, rel=1e-9)


def test_reversal_points_validation():
    with pytest.raises(DomainError):
        reversal_points(C, -1)
    with pytest.raises(DomainError):
        reversal_points(0.0, 2)


def test_analytic_ratio_extrema():
    points = extrema(C, 2)

    for gamma in points.pure_odd:
        assert analytic_ratio(gamma, C) == pytest.approx(0.0, abs=1e-20)
    assert analytic_ratio(points.pure_even[0], C) > 1e20 or math.isinf(analytic_ratio(points.pure_even[0], C))
    assert analytic_ratio(math.pi / 2, 1.0) == math.inf


@given(st.floats(min_value=0.0, max_value=5.0), st.sampled_from([2, 4, 6, 30]))
def test_burst_pair_reproduces_the_analytic_ratio(gamma, order):
    even = analytic_even_odd_spectrum(order, gamma, C)
    odd = analytic_even_odd_spectrum(order + 1, gamma, C)

    assert even == pytest.approx(4 * math.sin(C * gamma) ** 2, abs=1e-12)
    assert odd == pytest.approx(4 * math.cos(C * gamma) ** 2, abs=1e-12)


def test_analytic_point_matches_the_closed_form():
    point = analytic_point(10, 0.2, C)

    assert point.eta == pytest.approx(analytic_ratio(0.2, C), rel=1e-9)


def test_burst_pair_phase_difference():
    pair = burst_pair(8, 0.1, C)

    assert pair.delta_phi == pytest.approx(8 * math.pi - 2 * C * 0.1)
    assert pair.second_amplitude == -pair.first_amplitude
    assert pair.delta_action.real == pytest.approx(2 * C * 0.1)


@pytest.mark.parametrize(
    "gamma,regime,low_signal",
    [
        (0.05, Regime.PERTURBATIVE, True),
        (0.3, Regime.PERTURBATIVE, False),
        (1.0, Regime.INTERMEDIATE, False),
        (5.0, Regime.DISORDERED, False),
    ],
)
def test_classify_regime(gamma, regime, low_signal):
    report = classify_regime(gamma, C)

    assert report.regime is regime
    assert report.low_signal is low_signal


def test_classify_regime_rejects_negative_gamma():
    with pytest.raises(DomainError):
        classify_regime(-0.1)


def test_disorder_threshold():
    assert disorder_threshold(C) == pytest.approx(3.5 * math.pi / C)
    assert disorder_threshold() == pytest.approx(3.5 * math.pi / C)


def test_harmonic_coefficients_for_a_plateau_harmonic():
    e0, w0, ip = 0.0844, 0.022782, 0.5
    order = 300
    energy = harmonic_return_energy(order, e0, w0, ip)
    branches = harmonic_coefficients(order, e0, w0, ip)

    assert 0 < energy < 3.17
    assert set(branches) == {Branch.SHORT, Branch.LONG}
    assert branches[Branch.SHORT].return_kinetic_energy == pytest.approx(energy, abs=1e-9)


def test_harmonic_above_the_cutoff():
    with pytest.raises(DomainError):
        harmonic_coefficients(600, 0.0844, 0.022782, 0.5)
