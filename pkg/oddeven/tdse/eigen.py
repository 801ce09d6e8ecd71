"""
Bound states of the soft-core atom.

`ground_state` relaxes a trial state in imaginary time with the same
split-operator factorization the real-time propagator uses.
`diagonalize_ground_state` solves the discretized eigenproblem directly and
serves as the independent check.
"""

from __future__ import annotations

import math
from dataclasses import replace
from functools import lru_cache
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy import fft, linalg, optimize

from oddeven.conf import settings
from oddeven.exceptions import ConvergenceError, DomainError
from oddeven.logging import logger
from oddeven.tdse.atoms import HYDROGEN_SOFT_CORE, IONIZATION_POTENTIALS, AtomLabel, AtomModel
from oddeven.tdse.grid import GridSpec
from oddeven.tdse.wavefunction import Wavefunction

SOFT_CORE_BRACKET = (0.05, 5.0)
ENERGY_CHECK_INTERVAL = 10


def hamiltonian_expectation(values: NDArray[np.complex128], grid: GridSpec, atom: AtomModel) -> float:
    """
    Rayleigh quotient ⟨ψ|H|ψ⟩/⟨ψ|ψ⟩ with the spectral kinetic operator.
    """
    kinetic = fft.ifft(0.5 * grid.k**2 * fft.fft(values))
    h_psi = kinetic + atom.potential(grid.x) * values
    return float(np.real(np.vdot(values, h_psi)) / np.real(np.vdot(values, values)))


def _trial_state(grid: GridSpec, atom: AtomModel) -> NDArray[np.complex128]:
    # exp(−κ·√(x²+a²)) has the asymptotics of the bound state; κ = 0 for a free particle.
    kappa = atom.potential_strength * math.sqrt(2.0 * atom.target_ionization_potential)
    return np.exp(-kappa * np.sqrt(grid.x**2 + atom.soft_core_parameter**2)).astype(np.complex128)


def _relax(
    values: NDArray[np.complex128],
    grid: GridSpec,
    atom: AtomModel,
    dtau: float,
    tolerance: float,
    max_iterations: int,
) -> tuple[NDArray[np.complex128], float, int]:
    half_potential = np.exp(-0.5 * dtau * atom.potential(grid.x))
    kinetic = np.exp(-0.5 * dtau * grid.k**2)

    energy = hamiltonian_expectation(values, grid, atom)
    change = math.inf
    for iteration in range(1, max_iterations + 1):
        values = half_potential * fft.ifft(kinetic * fft.fft(half_potential * values))
        values /= math.sqrt(np.sum(np.abs(values) ** 2) * grid.dx)
        if iteration % ENERGY_CHECK_INTERVAL == 0:
            new_energy = hamiltonian_expectation(values, grid, atom)
            change = abs(new_energy - energy)
            energy = new_energy
            if change < tolerance:
                return values, energy, iteration
    raise ConvergenceError(
        f"imaginary-time relaxation did not converge at dtau={dtau}",
        residual=change,
        iterations=max_iterations,
    )


@lru_cache(maxsize=32)
def _ground_state_cached(
    grid: GridSpec,
    atom: AtomModel,
    tolerance: float,
    max_iterations: int,
    coarse_dtau: float,
    fine_dtau: float,
) -> tuple[NDArray[np.complex128], float]:
    values = _trial_state(grid, atom)
    values /= math.sqrt(np.sum(np.abs(values) ** 2) * grid.dx)

    energy = math.nan
    stages = (
        (coarse_dtau, max(tolerance, 1e-8)),
        (fine_dtau, tolerance),
    )
    for dtau, stage_tolerance in stages:
        values, energy, iterations = _relax(values, grid, atom, dtau, stage_tolerance, max_iterations)
        logger.debug(f"ground state: dtau={dtau} converged after {iterations} steps, E={energy:.12f}")

    values = np.real(values).astype(np.complex128)
    values /= math.sqrt(np.sum(np.abs(values) ** 2) * grid.dx)
    if np.sum(np.real(values)) < 0:
        values = -values
    values.setflags(write=False)
    return values, energy


def ground_state(
    grid: GridSpec,
    atom: AtomModel,
    *,
    tolerance: float | None = None,
    max_iterations: int | None = None,
) -> tuple[Wavefunction, float]:
    """
    Lowest eigenstate of H = p²/2 + V(x) and its energy.

    Relaxes in imaginary time, first with the coarse step then with the fine
    one, until the energy changes by less than `tolerance` between checks.
    The result is real, positive and normalized. Results are cached per
    grid, atom and relaxation settings, so scans over the THz field reuse
    one ground state.

    Raises:
        ConvergenceError: If a stage exhausts `max_iterations`.
    """
    values, energy = _ground_state_cached(
        grid,
        atom,
        tolerance if tolerance is not None else settings.ground_state_tolerance,
        max_iterations if max_iterations is not None else settings.ground_state_max_iterations,
        settings.imaginary_dt_coarse,
        settings.imaginary_dt_fine,
    )
    return Wavefunction(values.copy(), 0.0), energy


def diagonalize_ground_state(
    grid: GridSpec,
    atom: AtomModel,
    kinetic: Literal["spectral", "finite-difference"] = "spectral",
) -> tuple[float, NDArray[np.float64]]:
    """
    Ground-state energy and normalized eigenvector from dense diagonalization.

    `spectral` builds the circulant matrix of the FFT kinetic operator, the
    exact operator `ground_state` works with; `finite-difference` uses the
    three-point Laplacian.
    """
    potential = atom.potential(grid.x)
    if kinetic == "spectral":
        column = np.real(fft.ifft(0.5 * grid.k**2))
        hamiltonian = linalg.circulant(column) + np.diag(potential)
        energies, vectors = linalg.eigh(hamiltonian, subset_by_index=[0, 0])
    elif kinetic == "finite-difference":
        diagonal = 1.0 / grid.dx**2 + potential
        off_diagonal = np.full(grid.num_points - 1, -0.5 / grid.dx**2)
        energies, vectors = linalg.eigh_tridiagonal(diagonal, off_diagonal, select="i", select_range=(0, 0))
    else:
        raise DomainError(f"unknown kinetic discretization {kinetic!r}")

    vector = vectors[:, 0] / math.sqrt(grid.dx)
    if vector.sum() < 0:
        vector = -vector
    return float(energies[0]), vector


@lru_cache(maxsize=32)
def tune_soft_core(ionization_potential: float, grid: GridSpec) -> float:
    """
    Soft-core parameter a whose ground-state energy on `grid` is −Ip.

    The energy rises monotonically with a, so a bracketing root search on
    [0.05, 5] converges.

    Raises:
        DomainError: If Ip lies outside (0.1, 2) or the bracket holds no root.
    """
    if not 0.1 < ionization_potential < 2.0:
        raise DomainError(f"ionization potential {ionization_potential} outside (0.1, 2.0)")

    def residual(a: float) -> float:
        atom = AtomModel(a, ionization_potential)
        return ground_state(grid, atom)[1] + ionization_potential

    low, high = SOFT_CORE_BRACKET
    f_low, f_high = residual(low), residual(high)
    if f_low * f_high > 0:
        raise DomainError(
            f"soft-core bracket [{low}, {high}] does not contain Ip={ionization_potential}",
            detail={"residual_low": f_low, "residual_high": f_high},
        )

    a = optimize.brentq(residual, low, high, xtol=1e-12, rtol=1e-12)
    error = abs(residual(a))
    if error >= 1e-4:
        raise DomainError(f"soft-core tuning missed Ip={ionization_potential}", detail={"residual": error})
    logger.debug(f"soft-core parameter for Ip={ionization_potential}: a={a:.6f}")
    return float(a)


def atom_for(label: AtomLabel | str, grid: GridSpec | None = None, ionization_potential: float | None = None) -> AtomModel:
    """
    Preset atom for `label`.

    Hydrogen uses a = √2; the other targets are tuned on a compact grid with the
    spacing of `grid`, which is all a bound state needs.
    """
    label = AtomLabel(label)
    if label is AtomLabel.CUSTOM:
        if ionization_potential is None:
            raise DomainError("a custom atom needs an ionization potential")
        target = ionization_potential
    else:
        target = ionization_potential or IONIZATION_POTENTIALS[label]

    if label is AtomLabel.H and target == IONIZATION_POTENTIALS[AtomLabel.H]:
        return AtomModel(HYDROGEN_SOFT_CORE, target, label)

    tuning_grid = GridSpec.compact(grid.dx if grid else None, grid.dt if grid else None)
    return replace(AtomModel(1.0, target, label), soft_core_parameter=tune_soft_core(target, tuning_grid))
