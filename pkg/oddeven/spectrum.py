"""
Harmonic spectra of dipole-acceleration signals and the even-to-odd ratio.

Spectral amplitudes are normalized so that the one-sided intensity |A(ω)|²
integrates over ω to the energy Σ|a(t)|²·dt of the windowed signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy import fft, integrate, signal as sps

from oddeven.conf import settings
from oddeven.exceptions import DomainError
from oddeven.fields import ProbePulse
from oddeven.logging import logger
from oddeven.tdse.propagator import DipoleSignal

CUTOFF_LAW_FACTOR = 3.17


class WindowKind(str, Enum):
    FLAT_TOP = "flat-top"
    FULL_PULSE = "full-pulse"


class RatioFlag(str, Enum):
    OK = "ok"
    PURE_EVEN = "pure-even"
    """Odd neighbours carry no intensity; η is reported as +∞."""
    NO_SIGNAL = "no-signal"
    """All three harmonics are empty; η is reported as 0."""


@dataclass(frozen=True)
class WindowSpec:
    """
    Hann window applied to the samples with start ≤ t ≤ stop.
    """

    kind: WindowKind
    start: float
    stop: float

    def __post_init__(self) -> None:
        if not self.stop > self.start:
            raise DomainError(f"window stop {self.stop} must follow its start {self.start}")

    @classmethod
    def for_signal(cls, signal: DipoleSignal, kind: WindowKind | str = WindowKind.FLAT_TOP) -> WindowSpec:
        """
        The window of `kind` for the probe that produced `signal`.

        A flat top shorter than `min_flat_top_cycles` cannot resolve
        neighbouring harmonics; the full pulse is used instead and a warning
        names the substitution. Signals without a probe are windowed over
        their whole span.
        """
        kind = WindowKind(kind)
        probe = signal.probe
        if probe is None:
            return cls(kind, float(signal.times[0]), float(signal.times[-1]))
        if kind is WindowKind.FLAT_TOP and probe.flat_top_cycles < settings.min_flat_top_cycles:
            logger.warning(
                f"flat top of {probe.flat_top_cycles} cycles is shorter than the "
                f"{settings.min_flat_top_cycles} needed to resolve harmonics, windowing the full pulse instead"
            )
            kind = WindowKind.FULL_PULSE
        if kind is WindowKind.FLAT_TOP:
            return cls(kind, probe.flat_top_start, probe.flat_top_end)
        return cls(kind, probe.start, probe.end)

    def descriptor(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "start": self.start, "stop": self.stop, "function": "hann"}


@dataclass(frozen=True)
class HhgSpectrum:
    """
    One-sided spectrum on a uniform axis of harmonic orders ω/w0.
    """

    orders: NDArray[np.float64]
    amplitude: NDArray[np.complex128]
    window: WindowSpec
    carrier_frequency: float

    @property
    def intensity(self) -> NDArray[np.float64]:
        return np.abs(self.amplitude) ** 2

    @property
    def order_step(self) -> float:
        return float(self.orders[1] - self.orders[0])

    @property
    def frequency_step(self) -> float:
        return self.order_step * self.carrier_frequency

    @property
    def max_order(self) -> float:
        return float(self.orders[-1])

    def to_columns(self) -> dict[str, NDArray[np.float64]]:
        return {"order": self.orders, "intensity": self.intensity}


@dataclass(frozen=True)
class HarmonicIntensity:
    order: int
    intensity: float
    half_width: float


@dataclass(frozen=True)
class EvenOddPoint:
    """
    η = I(N) / ½(I(N−1) + I(N+1)) at an even order N.
    """

    order: int
    eta: float
    even_intensity: float
    odd_average: float
    flag: RatioFlag = RatioFlag.OK


@dataclass(frozen=True)
class WindowSensitivity:
    order: int
    flat_top: EvenOddPoint
    full_pulse: EvenOddPoint
    relative_change: float

    def exceeds(self, limit: float | None = None) -> bool:
        return self.relative_change > (settings.window_sensitivity_limit if limit is None else limit)


def _next_power_of_two(value: int) -> int:
    return 1 << max(0, (value - 1).bit_length())


def _resolve_carrier(signal: DipoleSignal, carrier_frequency: float | None) -> float:
    if carrier_frequency is not None:
        return carrier_frequency
    if signal.probe is None:
        raise DomainError("a signal without a probe needs an explicit carrier frequency")
    return signal.probe.carrier_frequency


def compute_spectrum(
    signal: DipoleSignal,
    window: WindowSpec | WindowKind | str | None = None,
    *,
    carrier_frequency: float | None = None,
) -> HhgSpectrum:
    """
    Windowed, zero-padded FFT of the acceleration on a harmonic-order axis.

    The Hann window covers only the samples inside the window interval (the
    probe flat top by default); samples outside it are dropped. The windowed
    samples are zero-padded to the next power of two of at least
    `zero_padding_factor` times their count.

    Raises:
        DomainError: If the signal is empty, shorter than two optical cycles or
            leaves fewer than two samples in the window.
    """
    if len(signal) == 0:
        raise DomainError("cannot compute the spectrum of an empty signal")
    w0 = _resolve_carrier(signal, carrier_frequency)
    span = float(signal.times[-1] - signal.times[0])
    if span < 2.0 * (2.0 * math.pi / w0):
        raise DomainError(f"signal spans {span:.2f} a.u., less than two optical cycles")

    if not isinstance(window, WindowSpec):
        window = WindowSpec.for_signal(signal, window or WindowKind.FLAT_TOP)

    dt = signal.dt
    tolerance = 1e-9 * dt
    inside = (signal.times >= window.start - tolerance) & (signal.times <= window.stop + tolerance)
    count = int(inside.sum())
    if count < 2:
        raise DomainError("the window holds fewer than two samples")

    windowed = signal.acceleration[inside] * sps.get_window("hann", count, fftbins=False)
    n_fft = _next_power_of_two(settings.zero_padding_factor * count)
    transform = fft.rfft(windowed, n=n_fft)
    omega = 2.0 * np.pi * fft.rfftfreq(n_fft, d=dt)

    # One-sided weights: the DC and Nyquist bins appear once in the full spectrum.
    weights = np.full(transform.size, 2.0)
    weights[0] = 1.0
    if n_fft % 2 == 0:
        weights[-1] = 1.0
    amplitude = transform * dt * np.sqrt(weights / (2.0 * np.pi))

    return HhgSpectrum(orders=omega / w0, amplitude=amplitude, window=window, carrier_frequency=w0)


def harmonic_intensity(spec: HhgSpectrum, order: int, half_width: float | None = None) -> HarmonicIntensity:
    """
    Intensity integrated over [N − h, N + h] in harmonic orders (trapezoid rule).
    """
    half_width = settings.harmonic_half_width if half_width is None else half_width
    low, high = order - half_width, order + half_width
    if low < spec.orders[0] or high > spec.orders[-1]:
        raise DomainError(
            f"harmonic {order} lies outside the spectral range [0, {spec.max_order:.1f}]",
            detail={"order": order},
        )
    selected = (spec.orders >= low) & (spec.orders <= high)
    value = float(integrate.trapezoid(spec.intensity[selected], spec.orders[selected]))
    return HarmonicIntensity(order=order, intensity=max(value, 0.0), half_width=half_width)


def ratio_from_intensities(order: int, even: float, lower_odd: float, upper_odd: float) -> EvenOddPoint:
    """
    Builds the η record from the three harmonic intensities around `order`.
    """
    odd_average = 0.5 * (lower_odd + upper_odd)
    if odd_average > 0:
        return EvenOddPoint(order, even / odd_average, even, odd_average)
    if even > 0:
        return EvenOddPoint(order, math.inf, even, odd_average, RatioFlag.PURE_EVEN)
    return EvenOddPoint(order, 0.0, even, odd_average, RatioFlag.NO_SIGNAL)


def even_to_odd_ratio(spec: HhgSpectrum, order: int) -> EvenOddPoint:
    """
    η at the even harmonic `order`.

    Raises:
        DomainError: If `order` is odd or a neighbour lies outside the spectrum.
    """
    if order % 2:
        raise DomainError(f"the even-to-odd ratio needs an even order, got {order}")
    return ratio_from_intensities(
        order,
        harmonic_intensity(spec, order).intensity,
        harmonic_intensity(spec, order - 1).intensity,
        harmonic_intensity(spec, order + 1).intensity,
    )


def cutoff_order(peak_amplitude: float, carrier_frequency: float, ionization_potential: float) -> float:
    """
    (Ip + 3.17·Up) / w0 with Up = E0²/4w0².
    """
    if carrier_frequency <= 0 or peak_amplitude < 0 or ionization_potential < 0:
        raise DomainError("cutoff law needs a positive frequency and non-negative amplitude and Ip")
    ponderomotive = peak_amplitude**2 / (4.0 * carrier_frequency**2)
    return (ionization_potential + CUTOFF_LAW_FACTOR * ponderomotive) / carrier_frequency


def monitored_even_order(peak_amplitude: float, carrier_frequency: float, ionization_potential: float) -> int:
    """
    Largest even order not above the cutoff.
    """
    return 2 * math.floor(cutoff_order(peak_amplitude, carrier_frequency, ionization_potential) / 2)


def monitored_order_for(probe: ProbePulse, ionization_potential: float) -> int:
    return monitored_even_order(probe.peak_amplitude, probe.carrier_frequency, ionization_potential)


def locate_cutoff(spec: HhgSpectrum, start_order: int, stop_order: int, decades: float = 1.0) -> int:
    """
    Last odd harmonic in [start_order, stop_order] within `decades` of the
    plateau, where the plateau level is the median odd-harmonic intensity.
    """
    first = start_order if start_order % 2 else start_order + 1
    orders = [n for n in range(first, stop_order + 1, 2) if n + settings.harmonic_half_width <= spec.max_order]
    if not orders:
        raise DomainError(f"no odd harmonics between {start_order} and {stop_order}")

    intensities = np.array([harmonic_intensity(spec, n).intensity for n in orders])
    positive = intensities > 0
    if not positive.any():
        raise DomainError("the spectrum holds no odd-harmonic signal")
    logs = np.full(intensities.shape, -np.inf)
    logs[positive] = np.log10(intensities[positive])
    level = float(np.median(logs[positive])) - decades
    on_plateau = np.flatnonzero(logs >= level)
    return orders[int(on_plateau[-1])]


def window_sensitivity(signal: DipoleSignal, order: int, *, carrier_frequency: float | None = None) -> WindowSensitivity:
    """
    Relative η change between the flat-top and the full-pulse window.
    """
    flat = even_to_odd_ratio(compute_spectrum(signal, WindowKind.FLAT_TOP, carrier_frequency=carrier_frequency), order)
    full = even_to_odd_ratio(
        compute_spectrum(signal, WindowKind.FULL_PULSE, carrier_frequency=carrier_frequency), order
    )
    if flat.eta == full.eta:
        change = 0.0
    elif flat.eta == 0 or math.isinf(flat.eta):
        change = math.inf
    else:
        change = abs(full.eta - flat.eta) / flat.eta
    return WindowSensitivity(order=order, flat_top=flat, full_pulse=full, relative_change=change)


def synthetic_signal(
    probe: ProbePulse,
    orders: dict[int, float],
    dt: float | None = None,
) -> DipoleSignal:
    """
    a(t) = Σ c_N·cos(N·w0·t) sampled over the probe pulse.

    Bypasses the TDSE; used to check the spectral pipeline.
    """
    dt = dt or settings.grid_dt
    n_steps = math.ceil(probe.duration / dt - 1e-9)
    times = probe.start + dt * np.arange(n_steps + 1)
    acceleration = np.zeros_like(times)
    for order, amplitude in orders.items():
        acceleration += amplitude * np.cos(order * probe.carrier_frequency * times)
    return DipoleSignal(times=times, acceleration=acceleration, probe=probe, metadata={"synthetic": dict(orders)})
