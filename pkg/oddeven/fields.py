"""
Atomic-unit conversions and the electric fields driving the atom.

Times are in atomic units with t = 0 at the centre of the probe pulse; the
THz pulse offset is measured from the same origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Annotated, TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray
from typing_extensions import Doc

from oddeven.exceptions import DomainError

FIELD_AU_KV_PER_CM = 5.142e6
INTENSITY_AU_W_PER_CM2 = 3.50945e16
WAVELENGTH_FREQUENCY_PRODUCT = 45.5633
"""Wavelength in nm times angular frequency in atomic units."""
TIME_AU_S = 2.4189e-17
TIME_AU_FS = TIME_AU_S * 1e15

FloatOrArray: TypeAlias = float | NDArray[np.float64]


def _positive(name: str, value: float) -> float:
    if not np.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return float(value)


def intensity_to_field(intensity: float) -> float:
    """
    Peak field amplitude (a.u.) of a linearly polarized pulse of the given
    peak intensity in W/cm².
    """
    return math.sqrt(_positive("intensity", intensity) / INTENSITY_AU_W_PER_CM2)


def field_to_intensity(field: float) -> float:
    return _positive("field amplitude", field) ** 2 * INTENSITY_AU_W_PER_CM2


def wavelength_to_frequency(wavelength: float) -> float:
    """
    Angular frequency (a.u.) of light with the given wavelength in nm.
    """
    return WAVELENGTH_FREQUENCY_PRODUCT / _positive("wavelength", wavelength)


def frequency_to_wavelength(frequency: float) -> float:
    return WAVELENGTH_FREQUENCY_PRODUCT / _positive("frequency", frequency)


def field_to_kv_per_cm(field: FloatOrArray) -> FloatOrArray:
    return field * FIELD_AU_KV_PER_CM


def kv_per_cm_to_field(value: FloatOrArray) -> FloatOrArray:
    return value / FIELD_AU_KV_PER_CM


def thz_to_frequency(frequency_thz: float) -> float:
    """
    Angular frequency (a.u.) of an ordinary frequency given in THz.
    """
    return 2.0 * math.pi * _positive("frequency", frequency_thz) * 1e12 * TIME_AU_S


def fs_to_au(value: FloatOrArray) -> FloatOrArray:
    return value / TIME_AU_FS


def au_to_fs(value: FloatOrArray) -> FloatOrArray:
    return value * TIME_AU_FS


def ponderomotive_energy(peak_amplitude: float, frequency: float) -> float:
    """
    Cycle-averaged quiver energy Up = E0²/4w0².
    """
    return peak_amplitude**2 / (4.0 * frequency**2)


def quiver_radius(peak_amplitude: float, frequency: float) -> float:
    return peak_amplitude / frequency**2


@dataclass(frozen=True)
class ProbePulse:
    """
    Mid-IR driving pulse with a trapezoidal envelope.

    The envelope rises linearly over `ramp_cycles`, stays at one over the flat
    top and falls linearly over `ramp_cycles`. It is centred on t = 0.
    """

    peak_amplitude: float
    carrier_frequency: float
    total_cycles: int = 10
    ramp_cycles: int = 1
    carrier_envelope_phase: float = 0.0

    def __post_init__(self) -> None:
        _positive("peak amplitude", self.peak_amplitude)
        _positive("carrier frequency", self.carrier_frequency)
        if self.ramp_cycles < 0:
            raise DomainError(f"ramp cycles must be non-negative, got {self.ramp_cycles}")
        if self.total_cycles < 2 * self.ramp_cycles + 1:
            raise DomainError(
                f"a {self.total_cycles}-cycle pulse cannot hold two {self.ramp_cycles}-cycle ramps and a flat top"
            )

    @classmethod
    def from_lab_units(
        cls,
        intensity: Annotated[float, Doc("Peak intensity in W/cm².")],
        wavelength_nm: Annotated[float, Doc("Vacuum wavelength of the carrier in nm.")],
        total_cycles: Annotated[int, Doc("Optical cycles from the start of the rise to the end of the fall.")] = 10,
        ramp_cycles: Annotated[int, Doc("Cycles of each linear ramp; 0 gives a rectangular envelope.")] = 1,
        carrier_envelope_phase: Annotated[float, Doc("Carrier-envelope phase in radians.")] = 0.0,
    ) -> ProbePulse:
        return cls(
            peak_amplitude=intensity_to_field(intensity),
            carrier_frequency=wavelength_to_frequency(wavelength_nm),
            total_cycles=total_cycles,
            ramp_cycles=ramp_cycles,
            carrier_envelope_phase=carrier_envelope_phase,
        )

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.carrier_frequency

    @property
    def duration(self) -> float:
        return self.total_cycles * self.period

    @property
    def ramp_duration(self) -> float:
        return self.ramp_cycles * self.period

    @property
    def flat_top_cycles(self) -> int:
        return self.total_cycles - 2 * self.ramp_cycles

    @property
    def flat_top_duration(self) -> float:
        return self.flat_top_cycles * self.period

    @property
    def start(self) -> float:
        return -0.5 * self.duration

    @property
    def end(self) -> float:
        return 0.5 * self.duration

    @property
    def flat_top_start(self) -> float:
        return self.start + self.ramp_duration

    @property
    def flat_top_end(self) -> float:
        return self.end - self.ramp_duration

    @property
    def intensity(self) -> float:
        """Peak intensity in W/cm²."""
        return field_to_intensity(self.peak_amplitude)

    @property
    def wavelength_nm(self) -> float:
        return frequency_to_wavelength(self.carrier_frequency)

    @property
    def ponderomotive_energy(self) -> float:
        return ponderomotive_energy(self.peak_amplitude, self.carrier_frequency)

    def descriptor(self) -> dict[str, float | int]:
        return {
            "peak_amplitude": self.peak_amplitude,
            "carrier_frequency": self.carrier_frequency,
            "total_cycles": self.total_cycles,
            "ramp_cycles": self.ramp_cycles,
            "carrier_envelope_phase": self.carrier_envelope_phase,
        }

    def envelope(self, t: ArrayLike) -> FloatOrArray:
        tau = np.asarray(t, dtype=float) - self.start
        inside = (tau >= 0.0) & (tau <= self.duration)
        if self.ramp_cycles == 0:
            value = np.where(inside, 1.0, 0.0)
        else:
            edge = np.minimum(tau, self.duration - tau) / self.ramp_duration
            value = np.where(inside, np.clip(edge, 0.0, 1.0), 0.0)
        return value if value.ndim else float(value)

    def field_at(self, t: ArrayLike) -> FloatOrArray:
        t = np.asarray(t, dtype=float)
        value = (
            self.peak_amplitude
            * self.envelope(t)
            * np.cos(self.carrier_frequency * t + self.carrier_envelope_phase)
        )
        return value if np.ndim(value) else float(value)


@dataclass(frozen=True)
class ThzPulse:
    """
    THz waveform E_T(t) = ET0·exp(−wT²(t−t0)²/36π²)·sin(wT(t−t0)).

    A negative amplitude flips the waveform; the sampling scheme cannot tell
    the two apart.
    """

    peak_amplitude: float
    frequency: float
    time_offset: float = 0.0

    def __post_init__(self) -> None:
        _positive("THz frequency", self.frequency)
        if not np.isfinite(self.peak_amplitude) or not np.isfinite(self.time_offset):
            raise DomainError("THz amplitude and offset must be finite")

    @classmethod
    def from_lab_units(
        cls,
        amplitude_kv_per_cm: Annotated[float, Doc("Peak field in kV/cm; the sign sets the polarity.")],
        frequency_thz: Annotated[float, Doc("Centre frequency in THz.")],
        offset_fs: Annotated[float, Doc("Time of the THz peak relative to the probe centre, in fs.")] = 0.0,
    ) -> ThzPulse:
        return cls(
            peak_amplitude=float(kv_per_cm_to_field(amplitude_kv_per_cm)),
            frequency=thz_to_frequency(frequency_thz),
            time_offset=float(fs_to_au(offset_fs)),
        )

    @property
    def envelope_width(self) -> float:
        """
        Standard deviation σ of the Gaussian envelope, 6π/(√2·wT).
        """
        return 6.0 * math.pi / (math.sqrt(2.0) * self.frequency)

    @property
    def centre(self) -> float:
        return self.time_offset

    @property
    def peak_magnitude(self) -> float:
        """
        Largest |E_T(t)|, found on a fine grid around the centre.
        """
        t = self.time_offset + np.linspace(-4, 4, 8001) * self.envelope_width
        return float(np.max(np.abs(self.field_at(t))))

    def descriptor(self) -> dict[str, float]:
        return {"peak_amplitude": self.peak_amplitude, "frequency": self.frequency, "time_offset": self.time_offset}

    def shifted(self, delta: float) -> ThzPulse:
        return replace(self, time_offset=self.time_offset + delta)

    def field_at(self, t: ArrayLike) -> FloatOrArray:
        s = np.asarray(t, dtype=float) - self.time_offset
        value = (
            self.peak_amplitude
            * np.exp(-(self.frequency**2) * s**2 / (36.0 * math.pi**2))
            * np.sin(self.frequency * s)
        )
        return value if value.ndim else float(value)


@dataclass(frozen=True)
class BroadbandThz:
    """
    Superposition of THz pulses, for waveforms with a broad frequency band.
    """

    components: tuple[ThzPulse, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.components:
            raise DomainError("a broadband THz waveform needs at least one component")

    @property
    def centre(self) -> float:
        weights = np.abs([c.peak_amplitude for c in self.components])
        offsets = [c.time_offset for c in self.components]
        if not weights.any():
            return float(np.mean(offsets))
        return float(np.average(offsets, weights=weights))

    @property
    def envelope_width(self) -> float:
        return max(c.envelope_width for c in self.components)

    @property
    def peak_magnitude(self) -> float:
        t = self.centre + np.linspace(-6, 6, 12001) * self.envelope_width
        return float(np.max(np.abs(self.field_at(t))))

    def descriptor(self) -> dict[str, list[dict[str, float]]]:
        return {"components": [c.descriptor() for c in self.components]}

    def shifted(self, delta: float) -> BroadbandThz:
        return BroadbandThz(tuple(c.shifted(delta) for c in self.components))

    def field_at(self, t: ArrayLike) -> FloatOrArray:
        total = sum(np.asarray(c.field_at(t), dtype=float) for c in self.components)
        value = np.asarray(total, dtype=float)
        return value if value.ndim else float(value)


ThzWaveform: TypeAlias = ThzPulse | BroadbandThz


def probe_field_at(pulse: ProbePulse, t: ArrayLike) -> FloatOrArray:
    """
    E0·envelope(t)·cos(w0·t + CEP); zero outside the pulse.
    """
    return pulse.field_at(t)


def thz_field_at(pulse: ThzWaveform, t: ArrayLike) -> FloatOrArray:
    return pulse.field_at(t)


@dataclass(frozen=True)
class CompositeField:
    """
    Probe plus an optional THz contribution.

    The THz part is either a waveform (full-wave mode) or a constant value
    held for the whole propagation (quasi-static mode), never both.
    """

    probe: ProbePulse
    thz: ThzWaveform | None = None
    static_thz_value: float | None = None

    def __post_init__(self) -> None:
        if self.thz is not None and self.static_thz_value is not None:
            raise DomainError("a composite field takes either a THz waveform or a static THz value, not both")

    @property
    def is_symmetric(self) -> bool:
        """
        True when no THz contribution breaks the half-cycle symmetry.
        """
        return self.thz is None and not self.static_thz_value

    def thz_at(self, t: ArrayLike) -> FloatOrArray:
        if self.thz is not None:
            return self.thz.field_at(t)
        value = np.full(np.shape(t), self.static_thz_value or 0.0)
        return value if value.ndim else float(value)

    def field_at(self, t: ArrayLike) -> FloatOrArray:
        value = np.asarray(self.probe.field_at(t)) + np.asarray(self.thz_at(t))
        return value if value.ndim else float(value)


@dataclass(frozen=True)
class AsymmetryPoint:
    """
    The scaled THz field γ = E0·ET/w0³ together with its inputs.
    """

    gamma: float
    thz_field: float
    peak_amplitude: float
    carrier_frequency: float

    @classmethod
    def from_fields(cls, peak_amplitude: float, carrier_frequency: float, thz_field: float) -> AsymmetryPoint:
        return cls(
            gamma=asymmetry_parameter(peak_amplitude, carrier_frequency, thz_field),
            thz_field=thz_field,
            peak_amplitude=peak_amplitude,
            carrier_frequency=carrier_frequency,
        )


def asymmetry_parameter(peak_amplitude: float, carrier_frequency: float, thz_field: float) -> float:
    """
    γ = E0·ET/w0³.
    """
    _positive("peak amplitude", peak_amplitude)
    _positive("carrier frequency", carrier_frequency)
    return peak_amplitude * thz_field / carrier_frequency**3
