from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from oddeven.exceptions import DomainError
from oddeven.fields import CompositeField, ProbePulse, ThzWaveform, asymmetry_parameter
from oddeven.logging import logger
from oddeven.spectrum import (
    EvenOddPoint,
    HhgSpectrum,
    WindowKind,
    compute_spectrum,
    even_to_odd_ratio,
    monitored_order_for,
)
from oddeven.tdse import AbsorberSpec, AtomModel, DipoleSignal, GridSpec, ground_state, propagate


@dataclass(frozen=True)
class SimulationSetup:
    """
    Everything one TDSE run needs: probe, atom, grid, absorber and the THz part.

    The THz part is either a waveform (`thz`) or a value held constant over
    the probe (`static_thz`). `order` overrides the monitored even harmonic,
    which otherwise sits just below the cutoff.
    """

    probe: ProbePulse
    atom: AtomModel
    grid: GridSpec
    absorber: AbsorberSpec | None = field(default_factory=AbsorberSpec)
    thz: ThzWaveform | None = None
    static_thz: float | None = None
    window: WindowKind = WindowKind.FLAT_TOP
    order: int | None = None

    def __post_init__(self) -> None:
        if self.thz is not None and self.static_thz is not None:
            raise DomainError("a setup takes either a THz waveform or a static THz value, not both")
        if self.order is not None and self.order % 2:
            raise DomainError(f"the monitored order must be even, got {self.order}")

    @property
    def composite_field(self) -> CompositeField:
        return CompositeField(self.probe, self.thz, self.static_thz)

    @property
    def monitored_order(self) -> int:
        if self.order is not None:
            return self.order
        return monitored_order_for(self.probe, self.atom.ionization_potential)

    @property
    def gamma(self) -> float | None:
        """
        Asymmetry parameter of a static THz value; None for waveforms.
        """
        if self.thz is not None:
            return None
        return asymmetry_parameter(self.probe.peak_amplitude, self.probe.carrier_frequency, self.static_thz or 0.0)

    def refined(self) -> SimulationSetup:
        return replace(self, grid=self.grid.refined())

    def with_static_thz(self, value: float) -> SimulationSetup:
        return replace(self, thz=None, static_thz=value)

    def with_thz(self, thz: ThzWaveform | None) -> SimulationSetup:
        return replace(self, thz=thz, static_thz=None)

    def descriptor(self) -> dict[str, Any]:
        return {
            "probe": self.probe.descriptor(),
            "atom": self.atom.descriptor(),
            "grid": self.grid.descriptor(),
            "absorber": self.absorber.descriptor() if self.absorber else None,
            "thz": self.thz.descriptor() if self.thz is not None else None,
            "static_thz": self.static_thz,
            "window": self.window.value,
            "order": self.monitored_order,
        }


@dataclass(frozen=True)
class SimulationResult:
    setup: SimulationSetup
    signal: DipoleSignal
    spectrum: HhgSpectrum
    point: EvenOddPoint
    ground_energy: float


def run_simulation(setup: SimulationSetup) -> SimulationResult:
    """
    Ground state, propagation through the composite field, spectrum and η.
    """
    state, energy = ground_state(setup.grid, setup.atom)
    state.time = setup.probe.start
    logger.info(
        f"running TDSE: {setup.probe.wavelength_nm:.0f} nm, {setup.probe.intensity:.3g} W/cm², "
        f"{setup.grid.num_points} points, monitoring H{setup.monitored_order}"
    )
    signal = propagate(state, setup.composite_field, setup.grid, setup.absorber, setup.atom)
    spectrum = compute_spectrum(signal, setup.window)
    point = even_to_odd_ratio(spectrum, setup.monitored_order)
    return SimulationResult(setup=setup, signal=signal, spectrum=spectrum, point=point, ground_energy=energy)


def evaluate_point(setup: SimulationSetup) -> EvenOddPoint:
    """
    η of one setup. Module level so process workers can pickle it.
    """
    return run_simulation(setup).point
