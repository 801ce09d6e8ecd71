import math

import numpy as np
import pytest

from oddeven.conf import settings
from oddeven.exceptions import ConvergenceError, DomainError
from oddeven.fields import ProbePulse
from oddeven.tdse import (
    HYDROGEN_SOFT_CORE,
    IONIZATION_POTENTIALS,
    AtomLabel,
    AtomModel,
    GridSpec,
    atom_for,
    diagonalize_ground_state,
    ground_state,
    tune_soft_core,
)
from oddeven.tdse.eigen import _ground_state_cached


@pytest.fixture(scope="module")
def grid():
    return GridSpec.symmetric(0.2, 1024, 0.05)


@pytest.fixture(scope="module")
def hydrogen():
    return AtomModel.hydrogen()


def test_hydrogen_ground_state_energy(grid, hydrogen):
    state, energy = ground_state(grid, hydrogen)

    assert energy == pytest.approx(-0.5, abs=1e-3)
    assert state.norm(grid) == pytest.approx(1.0, abs=1e-10)


def test_ground_state_matches_direct_diagonalization(grid, hydrogen):
    _, energy = ground_state(grid, hydrogen)
    oracle, vector = diagonalize_ground_state(grid, hydrogen)

    assert energy == pytest.approx(oracle, abs=1e-6)
    assert np.sum(np.abs(vector) ** 2) * grid.dx == pytest.approx(1.0)


def test_finite_difference_oracle_agrees(grid, hydrogen):
    energy, _ = diagonalize_ground_state(grid, hydrogen, kinetic="finite-difference")

    assert energy == pytest.approx(-0.5, abs=2e-3)


def test_unknown_kinetic_discretization(grid, hydrogen):
    with pytest.raises(DomainError):
        diagonalize_ground_state(grid, hydrogen, kinetic="chebyshev")


def test_ground_state_is_real_positive_and_even(grid, hydrogen):
    state, _ = ground_state(grid, hydrogen)

    assert np.max(np.abs(state.values.imag)) == 0.0
    assert np.all(state.values.real > -1e-12)
    np.testing.assert_allclose(grid.mirror(state.values), state.values, atol=1e-8)


def test_ground_state_returns_a_private_copy(grid, hydrogen):
    first, _ = ground_state(grid, hydrogen)
    first.values[:] = 0.0
    second, _ = ground_state(grid, hydrogen)

    assert second.norm(grid) == pytest.approx(1.0)


def test_free_particle_sits_in_the_lowest_box_mode(grid):
    free = AtomModel(1.0, 0.5, potential_strength=0.0)
    _, energy = ground_state(grid, free)

    assert energy == pytest.approx(0.0, abs=1e-6)


def test_ground_state_reports_non_convergence(grid):
    atom = AtomModel(0.9, 0.7)
    with pytest.raises(ConvergenceError) as raised:
        ground_state(grid, atom, tolerance=1e-14, max_iterations=20)

    assert raised.value.iterations == 20
    assert raised.value.residual > 0


def test_tune_soft_core_for_hydrogen():
    a = tune_soft_core(0.5, GridSpec.compact())

    assert a == pytest.approx(HYDROGEN_SOFT_CORE, abs=0.01)


def test_tuned_helium_reaches_its_ionization_potential():
    grid = GridSpec.compact()
    atom = atom_for(AtomLabel.HE, grid)
    _, energy = ground_state(grid, atom)

    assert atom.soft_core_parameter < HYDROGEN_SOFT_CORE
    assert energy == pytest.approx(-IONIZATION_POTENTIALS[AtomLabel.HE], abs=1e-3)


@pytest.mark.parametrize("ionization_potential", [0.05, 2.5])
def test_tune_soft_core_rejects_out_of_range_targets(ionization_potential):
    with pytest.raises(DomainError):
        tune_soft_core(ionization_potential, GridSpec.compact())


def test_atom_presets():
    assert atom_for("H").soft_core_parameter == HYDROGEN_SOFT_CORE
    with pytest.raises(DomainError):
        atom_for("custom")
    with pytest.raises(ValueError):
        atom_for("Xe")


def test_atom_model_validation():
    with pytest.raises(DomainError):
        AtomModel(0.0, 0.5)
    with pytest.raises(DomainError):
        AtomModel(1.0, -0.5)
    with pytest.raises(DomainError):
        AtomModel(1.0, 0.5, potential_strength=-1.0)


def test_soft_core_potential_shape(hydrogen):
    x = np.array([-3.0, 0.0, 3.0])

    np.testing.assert_allclose(hydrogen.potential(x), -1.0 / np.sqrt(x**2 + 2.0))
    assert hydrogen.potential_gradient(x)[1] == 0.0
    assert hydrogen.potential_gradient(x)[2] == pytest.approx(-hydrogen.potential_gradient(x)[0])


def test_grid_validation():
    with pytest.raises(DomainError):
        GridSpec.symmetric(0.2, 512, 0.05)
    with pytest.raises(DomainError):
        GridSpec(0.0, 100.0, 1024, 0.05)
    with pytest.raises(DomainError):
        GridSpec.symmetric(0.2, 1024, 0.0)


def test_grid_for_probe_follows_the_box_rule():
    probe = ProbePulse.from_lab_units(2.5e14, 2000.0, 10)
    grid = GridSpec.for_probe(probe)
    quiver = probe.peak_amplitude / probe.carrier_frequency**2

    assert grid.half_width == pytest.approx(max(2 * quiver + 100, 400))
    assert math.log2(grid.num_points).is_integer()
    assert grid.dx <= 0.2
    assert grid.x[0] == pytest.approx(-grid.half_width)


def test_fitted_grid_keeps_the_box_and_tightens_the_spacing():
    grid = GridSpec.fitted(425.0, 0.2, 0.05)

    assert grid.x_min == -425.0
    assert grid.x_max == 425.0
    assert grid.num_points == 8192
    assert grid.dx == pytest.approx(850.0 / 8192)
    np.testing.assert_allclose(grid.mirror(grid.x)[1:], -grid.x[1:])


def test_refined_grid_halves_the_steps():
    grid = GridSpec.symmetric(0.2, 1024, 0.05)
    fine = grid.refined()

    assert fine.dx == pytest.approx(0.1)
    assert fine.dt == pytest.approx(0.025)
    assert fine.half_width == grid.half_width


def test_ground_state_cache_is_keyed_on_the_relaxation_steps(monkeypatch, grid, hydrogen):
    ground_state(grid, hydrogen)
    misses = _ground_state_cached.cache_info().misses

    ground_state(grid, hydrogen)
    assert _ground_state_cached.cache_info().misses == misses

    monkeypatch.setattr(settings, "imaginary_dt_fine", 0.02)
    _, energy = ground_state(grid, hydrogen)

    assert _ground_state_cached.cache_info().misses == misses + 1
    assert energy == pytest.approx(-0.5, abs=1e-3)
