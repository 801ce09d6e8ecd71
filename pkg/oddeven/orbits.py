"""
Classical returns of the three-step model and the universal even-to-odd law.

Phases are in radians of the probe carrier, φ = w0·t, for a field
E(t) = E0·cos(w0·t). An electron born at rest at x = 0 at phase φi sits at

    x(φ) = (E0/w0²)·[cos φ − cos φi + (φ − φi)·sin φi]

and returns when the bracket vanishes again. Return energies are in units of
the ponderomotive energy Up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any

import numpy as np
from scipy import optimize

from oddeven.conf import settings
from oddeven.exceptions import DomainError, SolverError
from oddeven.fields import ponderomotive_energy
from oddeven.spectrum import EvenOddPoint, ratio_from_intensities

RETURN_SCAN_POINTS = 20001
RETURN_SCAN_STOP = 2.0 * math.pi + 0.5
IONIZATION_PHASE_FLOOR = 1e-6
IONIZATION_PHASE_CEILING = 0.5 * math.pi - 1e-3
PERTURBATIVE_LIMIT = 0.6
LOW_SIGNAL_LIMIT = 0.1
DISORDER_FACTOR = 3.5
POLE_TOLERANCE = 1e-12


class Branch(str, Enum):
    SHORT = "short"
    LONG = "long"
    CUTOFF = "cutoff"


class Regime(str, Enum):
    PERTURBATIVE = "perturbative"
    INTERMEDIATE = "intermediate"
    DISORDERED = "disordered"


def return_condition(ionization_phase: float, phase: float) -> float:
    """
    Scaled excursion x(φ)·w0²/E0 of an electron born at `ionization_phase`.
    """
    return math.cos(phase) - math.cos(ionization_phase) + (phase - ionization_phase) * math.sin(ionization_phase)


def return_energy(ionization_phase: float, recombination_phase: float) -> float:
    """
    Kinetic energy at return in units of Up, 2·(sin φr − sin φi)².
    """
    return 2.0 * (math.sin(recombination_phase) - math.sin(ionization_phase)) ** 2


def recombination_phase(ionization_phase: float) -> float:
    """
    First return phase φr > φi of an electron born at `ionization_phase`.

    Raises:
        SolverError: If the electron does not return within one cycle and a half.
    """
    start = ionization_phase + 1e-3 * max(math.cos(ionization_phase), 1e-3)
    phases = np.linspace(start, RETURN_SCAN_STOP, RETURN_SCAN_POINTS)
    excursion = (
        np.cos(phases) - math.cos(ionization_phase) + (phases - ionization_phase) * math.sin(ionization_phase)
    )
    crossings = np.flatnonzero((excursion[:-1] < 0) & (excursion[1:] >= 0))
    if crossings.size == 0:
        raise SolverError(f"no return found for ionization phase {ionization_phase:.6f}")
    index = int(crossings[0])
    return float(
        optimize.brentq(lambda phase: return_condition(ionization_phase, phase), phases[index], phases[index + 1], xtol=1e-14)
    )


@dataclass(frozen=True)
class PhaseAngles:
    """
    θ = (φr + φi)/2 and Δθ = (φr − φi)/2.
    """

    theta: float
    delta_theta: float

    def __post_init__(self) -> None:
        if self.delta_theta <= 0:
            raise DomainError(f"delta_theta must be positive, got {self.delta_theta}")


@dataclass(frozen=True)
class CutoffCoefficient:
    value: float

    @property
    def magnitude(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class Trajectory:
    ionization_phase: float
    recombination_phase: float
    return_kinetic_energy: float
    branch: Branch

    @classmethod
    def from_ionization(cls, ionization_phase: float, branch: Branch) -> Trajectory:
        phase = recombination_phase(ionization_phase)
        return cls(ionization_phase, phase, return_energy(ionization_phase, phase), branch)

    @property
    def angles(self) -> PhaseAngles:
        return PhaseAngles(
            theta=0.5 * (self.recombination_phase + self.ionization_phase),
            delta_theta=0.5 * (self.recombination_phase - self.ionization_phase),
        )

    @property
    def residual(self) -> float:
        return abs(return_condition(self.ionization_phase, self.recombination_phase))

    @property
    def coefficient(self) -> CutoffCoefficient:
        return coefficient_c(self.angles)

    def to_record(self) -> dict[str, Any]:
        angles = self.angles
        return {
            "branch": self.branch.value,
            "phi_i": self.ionization_phase,
            "phi_r": self.recombination_phase,
            "theta": angles.theta,
            "delta_theta": angles.delta_theta,
            "C": self.coefficient.value,
            "energy_up": self.return_kinetic_energy,
        }


@lru_cache(maxsize=1)
def cutoff_trajectory() -> Trajectory:
    """
    The trajectory returning with the largest kinetic energy, ≈ 3.17 Up.
    """
    result = optimize.minimize_scalar(
        lambda phase: -return_energy(phase, recombination_phase(phase)),
        bounds=(1e-3, IONIZATION_PHASE_CEILING),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return Trajectory.from_ionization(float(result.x), Branch.CUTOFF)


def _solve_branch(target: float, low: float, high: float, branch: Branch) -> Trajectory:
    def mismatch(phase: float) -> float:
        return return_energy(phase, recombination_phase(phase)) - target

    f_low, f_high = mismatch(low), mismatch(high)
    if f_low * f_high > 0:
        raise SolverError(
            f"return energy {target} Up is not bracketed on the {branch.value} branch",
            detail={"low": low, "high": high},
        )
    phase = optimize.brentq(mismatch, low, high, xtol=1e-14)
    return Trajectory.from_ionization(float(phase), branch)


def solve_return(energy: float) -> tuple[Trajectory, Trajectory]:
    """
    Short and long trajectories returning with `energy` (units of Up).

    Long trajectories are born before the cutoff phase, short ones after it.

    Raises:
        DomainError: If `energy` is not inside (0, maximum return energy).
        SolverError: If a branch does not bracket `energy`.
    """
    cutoff = cutoff_trajectory()
    if not 0.0 < energy <= cutoff.return_kinetic_energy:
        raise DomainError(
            f"return energy {energy} Up outside (0, {cutoff.return_kinetic_energy:.4f}]",
            detail={"energy": energy},
        )
    phase_c = cutoff.ionization_phase
    short = _solve_branch(energy, phase_c, IONIZATION_PHASE_CEILING, Branch.SHORT)
    long = _solve_branch(energy, IONIZATION_PHASE_FLOOR, phase_c, Branch.LONG)
    return short, long


def coefficient_c(angles: PhaseAngles) -> CutoffCoefficient:
    """
    C = 2·sin θ·(Δθ·cos Δθ − sin Δθ).
    """
    theta, delta = angles.theta, angles.delta_theta
    return CutoffCoefficient(2.0 * math.sin(theta) * (delta * math.cos(delta) - math.sin(delta)))


def analytic_ratio(gamma: float, coefficient: float) -> float:
    """
    η = tan²(C·γ); +∞ at the poles C·γ = (k + ½)π.
    """
    phase = coefficient * gamma
    if abs(math.cos(phase)) < POLE_TOLERANCE:
        return math.inf
    return math.tan(phase) ** 2


def reversal_points(coefficient: float, k_max: int) -> list[float]:
    """
    Asymmetry parameters (k + ½)·π/2|C| where η crosses one, for k = 0..k_max.
    """
    if k_max < 0:
        raise DomainError(f"k_max must be non-negative, got {k_max}")
    if coefficient == 0:
        raise DomainError("a zero coefficient has no reversal points")
    return [(k + 0.5) * math.pi / (2.0 * abs(coefficient)) for k in range(k_max + 1)]


@dataclass(frozen=True)
class Extrema:
    pure_odd: list[float]
    """Minima of η (η = 0) at kπ/|C|."""
    pure_even: list[float]
    """Poles of η at (k + ½)π/|C|."""


def extrema(coefficient: float, k_max: int) -> Extrema:
    if k_max < 0:
        raise DomainError(f"k_max must be non-negative, got {k_max}")
    if coefficient == 0:
        raise DomainError("a zero coefficient has no extrema")
    period = math.pi / abs(coefficient)
    return Extrema(
        pure_odd=[k * period for k in range(k_max + 1)],
        pure_even=[(k + 0.5) * period for k in range(k_max + 1)],
    )


def disorder_threshold(coefficient: float | None = None) -> float:
    """
    3.5π/|C|, where the interference picture gives way to disorder.
    """
    coefficient = settings.cutoff_coefficient if coefficient is None else coefficient
    return DISORDER_FACTOR * math.pi / abs(coefficient)


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    low_signal: bool = False


def classify_regime(gamma: float, coefficient: float | None = None) -> RegimeReport:
    """
    Perturbative up to γ = 0.6, intermediate up to 3.5π/|C|, disordered above.

    Perturbative points below γ = 0.1 carry the low-signal flag: their even
    harmonics sit near the numerical noise floor.
    """
    if not gamma >= 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if gamma <= PERTURBATIVE_LIMIT:
        return RegimeReport(Regime.PERTURBATIVE, low_signal=gamma < LOW_SIGNAL_LIMIT)
    if gamma <= disorder_threshold(coefficient):
        return RegimeReport(Regime.INTERMEDIATE)
    return RegimeReport(Regime.DISORDERED)


@dataclass(frozen=True)
class BurstPair:
    """
    The two attosecond bursts of one optical cycle seen at harmonic N.

    Consecutive half-cycle bursts carry opposite dipole signs (D2 = −D1) and
    the THz field shifts their phases by ±S_T, so that
    ΔΦ = Φ2 − Φ1 = Nπ − ΔS with ΔS = 2·S_T.
    """

    order: int
    first_amplitude: complex
    second_amplitude: complex
    first_phase: float
    second_phase: float
    delta_phi: float
    delta_action: complex
    first_order_correction: float

    @property
    def intensity(self) -> float:
        total = self.first_amplitude * np.exp(-1j * self.first_phase) + self.second_amplitude * np.exp(
            -1j * self.second_phase
        )
        return float(abs(total) ** 2)


def burst_pair(order: int, gamma: float, coefficient: float) -> BurstPair:
    correction = coefficient * gamma
    first_phase = correction
    second_phase = order * math.pi - correction
    return BurstPair(
        order=order,
        first_amplitude=1.0 + 0j,
        second_amplitude=-1.0 + 0j,
        first_phase=first_phase,
        second_phase=second_phase,
        delta_phi=second_phase - first_phase,
        delta_action=complex(2.0 * correction),
        first_order_correction=correction,
    )


def analytic_even_odd_spectrum(order: int, gamma: float, coefficient: float) -> float:
    """
    Two-burst harmonic intensity: 4·sin²(Cγ) for even N, 4·cos²(Cγ) for odd N.
    """
    return burst_pair(order, gamma, coefficient).intensity


def harmonic_return_energy(
    order: int, peak_amplitude: float, carrier_frequency: float, ionization_potential: float
) -> float:
    """
    Return energy in Up needed to emit harmonic `order`: (N·w0 − Ip)/Up.
    """
    return (order * carrier_frequency - ionization_potential) / ponderomotive_energy(peak_amplitude, carrier_frequency)


def harmonic_coefficients(
    order: int, peak_amplitude: float, carrier_frequency: float, ionization_potential: float
) -> dict[Branch, Trajectory]:
    """
    Short- and long-branch trajectories (and so C) of a sub-cutoff harmonic.
    """
    energy = harmonic_return_energy(order, peak_amplitude, carrier_frequency, ionization_potential)
    short, long = solve_return(energy)
    return {Branch.SHORT: short, Branch.LONG: long}


def analytic_point(order: int, gamma: float, coefficient: float) -> EvenOddPoint:
    """
    η record at even `order` from the two-burst intensities of N and N ± 1.
    """
    return ratio_from_intensities(
        order,
        analytic_even_odd_spectrum(order, gamma, coefficient),
        analytic_even_odd_spectrum(order - 1, gamma, coefficient),
        analytic_even_odd_spectrum(order + 1, gamma, coefficient),
    )
