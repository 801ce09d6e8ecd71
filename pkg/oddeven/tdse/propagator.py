"""
Real-time propagation of the single-active-electron wavefunction.

The Hamiltonian is H = p²/2 + V(x) + x·E(t) in the length gauge. Each step
is a Strang splitting: half a potential step in position space, a full
kinetic step in momentum space, another half potential step, then the
absorbing mask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy import fft

from oddeven.conf import settings
from oddeven.exceptions import DomainError, NumericalInstabilityError
from oddeven.fields import CompositeField, ProbePulse, quiver_radius
from oddeven.logging import logger
from oddeven.tdse.atoms import AtomModel
from oddeven.tdse.grid import GridSpec
from oddeven.tdse.wavefunction import Wavefunction

BOX_SAFETY_MARGIN = 50.0


@dataclass(frozen=True)
class AbsorberSpec:
    """
    Multiplicative cos^p mask over the outer `width_fraction` of each half-box.
    """

    width_fraction: float = field(default_factory=lambda: settings.absorber_width_fraction)
    mask_exponent: float = field(default_factory=lambda: settings.absorber_mask_exponent)

    def __post_init__(self) -> None:
        if not 0.0 < self.width_fraction < 0.5:
            raise DomainError(f"absorber width fraction must lie in (0, 0.5), got {self.width_fraction}")
        if self.mask_exponent <= 0:
            raise DomainError(f"mask exponent must be positive, got {self.mask_exponent}")

    def mask(self, grid: GridSpec) -> NDArray[np.float64]:
        half = grid.half_width
        edge = (1.0 - self.width_fraction) * half
        depth = np.clip((np.abs(grid.x) - edge) / (half - edge + grid.dx), 0.0, None)
        # depth < 1 on every grid point, so the mask never reaches zero.
        return np.cos(0.5 * np.pi * depth) ** self.mask_exponent

    def descriptor(self) -> dict[str, Any]:
        return {"width_fraction": self.width_fraction, "mask_exponent": self.mask_exponent}


@dataclass
class DipoleSignal:
    """
    Dipole acceleration a(t) sampled every time step.

    Besides the acceleration the signal keeps ⟨x⟩(t), the norm history and
    the final state, which the consistency checks and checkpoints use.
    """

    times: NDArray[np.float64]
    acceleration: NDArray[np.float64]
    position: NDArray[np.float64] | None = None
    norm: NDArray[np.float64] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    probe: ProbePulse | None = None
    final_state: Wavefunction | None = None

    def __post_init__(self) -> None:
        if self.times.shape != self.acceleration.shape:
            raise DomainError("time and acceleration samples differ in length")

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def dt(self) -> float:
        if self.times.size < 2:
            raise DomainError("a signal with fewer than two samples has no time step")
        return float(self.times[1] - self.times[0])

    def scaled(self, factor: float) -> DipoleSignal:
        return DipoleSignal(
            times=self.times,
            acceleration=factor * self.acceleration,
            position=self.position,
            norm=self.norm,
            metadata=dict(self.metadata),
            probe=self.probe,
        )

    def to_columns(self) -> dict[str, NDArray[np.float64]]:
        return {"t_au": self.times, "accel_au": self.acceleration}


def check_box(grid: GridSpec, probe: ProbePulse) -> None:
    """
    Raises DomainError when the box cannot hold the long excursions of `probe`.
    """
    required = 2.0 * quiver_radius(probe.peak_amplitude, probe.carrier_frequency) + BOX_SAFETY_MARGIN
    if grid.half_width < required:
        raise DomainError(
            f"grid half-width {grid.half_width:.1f} a.u. is below the {required:.1f} a.u. the probe needs",
            detail={"half_width": grid.half_width, "required": required},
        )


def propagate(
    state: Wavefunction,
    field: CompositeField | None,
    grid: GridSpec,
    absorber: AbsorberSpec | None,
    atom: AtomModel,
    *,
    t_start: float | None = None,
    duration: float | None = None,
) -> DipoleSignal:
    """
    Evolves `state` through the field and records the dipole acceleration.

    Propagation runs over the whole probe pulse unless `t_start` and
    `duration` say otherwise; without a field `duration` is required. The
    Ehrenfest acceleration a(t) = −⟨∂V/∂x⟩ − E(t)·‖ψ‖² is recorded at every
    step including the initial one, so the signal has `n_steps + 1` samples.
    Before any absorption ‖ψ‖² = 1 and the field term is plain −E(t).

    Raises:
        DomainError: If the box is too small for the probe or no duration is known.
        NumericalInstabilityError: If the state turns non-finite or its norm grows.
    """
    if state.values.shape != (grid.num_points,):
        raise DomainError(f"state has {state.values.size} points, grid has {grid.num_points}")

    probe = field.probe if field is not None else None
    if probe is not None:
        check_box(grid, probe)
        t_start = probe.start if t_start is None else t_start
        duration = probe.duration if duration is None else duration
    else:
        t_start = state.time if t_start is None else t_start
    if duration is None or duration <= 0:
        raise DomainError("a propagation without a probe needs a positive duration")

    dt = grid.dt
    n_steps = math.ceil(duration / dt - 1e-9)
    times = t_start + dt * np.arange(n_steps + 1)
    fields = np.asarray(field.field_at(times), dtype=float) if field is not None else np.zeros(n_steps + 1)
    midpoint_fields = (
        np.asarray(field.field_at(times[:-1] + 0.5 * dt), dtype=float) if field is not None else np.zeros(n_steps)
    )

    x = grid.x
    potential = atom.potential(x)
    gradient = atom.potential_gradient(x)
    kinetic_phase = np.exp(-0.5j * grid.k**2 * dt)
    mask = absorber.mask(grid) if absorber is not None else None

    acceleration = np.empty(n_steps + 1)
    position = np.empty(n_steps + 1)
    norm = np.empty(n_steps + 1)

    psi = state.values.astype(np.complex128, copy=True)

    def record(index: int) -> None:
        density = np.abs(psi) ** 2
        norm[index] = density.sum() * grid.dx
        # The field pushes only the part of the electron still on the grid.
        acceleration[index] = -np.dot(density, gradient) * grid.dx - fields[index] * norm[index]
        position[index] = np.dot(density, x) * grid.dx

    record(0)
    lowest_norm = norm[0]
    logger.debug(f"propagating {n_steps} steps of dt={dt} from t={t_start:.3f}")

    for step in range(n_steps):
        half_step = np.exp(-0.5j * dt * (potential + x * midpoint_fields[step]))
        psi = half_step * fft.ifft(kinetic_phase * fft.fft(half_step * psi))
        if mask is not None:
            psi *= mask
        record(step + 1)

        current = norm[step + 1]
        if not np.isfinite(current):
            raise NumericalInstabilityError(
                f"wavefunction became non-finite at step {step + 1}", step=step + 1, time=float(times[step + 1])
            )
        if current - lowest_norm > settings.norm_gain_tolerance:
            raise NumericalInstabilityError(
                f"norm grew by {current - lowest_norm:.3e} at step {step + 1}",
                step=step + 1,
                time=float(times[step + 1]),
            )
        lowest_norm = min(lowest_norm, current)

    logger.debug(f"propagation finished, final norm {norm[-1]:.8f}")
    metadata: dict[str, Any] = {
        "grid": grid.descriptor(),
        "atom": atom.descriptor(),
        "absorber": absorber.descriptor() if absorber is not None else None,
        "steps": n_steps,
    }
    if probe is not None:
        metadata["probe"] = probe.descriptor()

    return DipoleSignal(
        times=times,
        acceleration=acceleration,
        position=position,
        norm=norm,
        metadata=metadata,
        probe=probe,
        final_state=Wavefunction(psi, float(times[-1])),
    )
