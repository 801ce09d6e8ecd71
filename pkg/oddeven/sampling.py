"""
THz waveform sampling by the even-to-odd harmonic ratio.

A short probe pulse is scanned across a THz pulse. At each delay the THz
field breaks the half-cycle symmetry of the probe, even harmonics appear,
and the measured η = tan²(C·γ) is inverted for |E_T| at that delay. Only the
magnitude is recoverable: E_T and −E_T give the same η.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray

from oddeven.conf import settings
from oddeven.exceptions import DomainError
from oddeven.fields import (
    ProbePulse,
    ThzWaveform,
    asymmetry_parameter,
    au_to_fs,
    field_to_kv_per_cm,
    fs_to_au,
    thz_field_at,
)
from oddeven.logging import logger
from oddeven.orbits import LOW_SIGNAL_LIMIT, PERTURBATIVE_LIMIT, analytic_point
from oddeven.pipeline import SimulationSetup, evaluate_point
from oddeven.runner import map_points
from oddeven.spectrum import EvenOddPoint

MIN_INTENSITY = 1.0e14
MAX_INTENSITY = 4.0e14
MIN_WAVELENGTH_NM = 1200.0
MIN_THZ_KV_CM = 20.0
MAX_THZ_KV_CM = 2000.0
DEFAULT_SPAN_WIDTHS = 4.0


class ScanMode(str, Enum):
    FULL_WAVE = "full-wave"
    """TDSE with the whole THz waveform, delayed."""
    QUASI_STATIC = "quasi-static"
    """TDSE with the THz value at the probe centre held constant."""
    ANALYTIC = "analytic"
    """No TDSE: the two-burst model η = tan²(C·γ)."""


class SampleFlag(str, Enum):
    OK = "ok"
    LOW_SIGNAL = "low-signal"
    SATURATED = "saturated"
    OUT_OF_RANGE = "out-of-range"
    FAILED = "failed"


@dataclass(frozen=True)
class FieldEstimate:
    value: float
    saturated: bool = False


def invert_ratio(
    eta: float, peak_amplitude: float, carrier_frequency: float, coefficient: float | None = None
) -> FieldEstimate:
    """
    |E_T| = w0³/(E0·|C|)·arctan √η on the principal branch.

    An infinite η maps to the branch edge C·γ = π/2 and is marked saturated.
    """
    coefficient = settings.cutoff_coefficient if coefficient is None else coefficient
    if math.isnan(eta) or eta < 0:
        raise DomainError(f"eta must be non-negative, got {eta}")
    if peak_amplitude <= 0 or carrier_frequency <= 0 or coefficient == 0:
        raise DomainError("inversion needs a positive probe amplitude, frequency and a non-zero coefficient")
    scale = carrier_frequency**3 / (peak_amplitude * abs(coefficient))
    if math.isinf(eta):
        return FieldEstimate(scale * 0.5 * math.pi, saturated=True)
    return FieldEstimate(scale * math.atan(math.sqrt(eta)))


@dataclass(frozen=True)
class RangeCheck:
    name: str
    value: float
    low: float
    high: float

    @property
    def passed(self) -> bool:
        return self.low <= self.value <= self.high


@dataclass(frozen=True)
class RangeReport:
    checks: tuple[RangeCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def warnings(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def check(self, name: str) -> RangeCheck:
        return next(check for check in self.checks if check.name == name)


def working_range_guard(probe: ProbePulse, thz_peak: float) -> RangeReport:
    """
    Checks the probe and THz peak against the window where the universal rule holds.
    """
    magnitude = abs(thz_peak)
    return RangeReport(
        (
            RangeCheck("intensity", probe.intensity, MIN_INTENSITY, MAX_INTENSITY),
            RangeCheck("wavelength", probe.wavelength_nm, MIN_WAVELENGTH_NM, math.inf),
            RangeCheck("thz_field", float(field_to_kv_per_cm(magnitude)), MIN_THZ_KV_CM, MAX_THZ_KV_CM),
            RangeCheck(
                "gamma",
                asymmetry_parameter(probe.peak_amplitude, probe.carrier_frequency, magnitude),
                LOW_SIGNAL_LIMIT,
                PERTURBATIVE_LIMIT,
            ),
        )
    )


def default_delays(probe: ProbePulse, thz: ThzWaveform) -> NDArray[np.float64]:
    """
    Delays stepped by the probe flat-top duration across ±4σ of the THz envelope.
    """
    step = probe.flat_top_duration
    count = math.floor(DEFAULT_SPAN_WIDTHS * thz.envelope_width / step)
    return thz.centre + step * np.arange(-count, count + 1, dtype=float)


def delays_between(start_fs: float, stop_fs: float, count: int) -> NDArray[np.float64]:
    if count < 1:
        raise DomainError(f"a delay grid needs at least one delay, got {count}")
    if count > 1 and not stop_fs > start_fs:
        raise DomainError("delay grid stop must follow its start")
    return np.asarray(fs_to_au(np.linspace(start_fs, stop_fs, count)), dtype=float)


@dataclass(frozen=True)
class DelayRecord:
    delay: float
    point: EvenOddPoint | None
    benchmark: float
    """True THz field at the probe centre for this delay."""
    error: str | None = None


@dataclass(frozen=True)
class DelayScan:
    """
    η measured at a strictly increasing sequence of probe delays.

    A delay τ places the probe centre at time τ of the THz waveform.
    """

    records: tuple[DelayRecord, ...]
    probe: ProbePulse
    thz: ThzWaveform
    mode: ScanMode
    order: int
    coefficient: float
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.records:
            raise DomainError("a delay scan needs at least one delay")
        delays = self.delays
        if np.any(np.diff(delays) <= 0):
            raise DomainError("scan delays must be strictly increasing")

    @property
    def delays(self) -> NDArray[np.float64]:
        return np.array([record.delay for record in self.records])

    @property
    def failures(self) -> list[DelayRecord]:
        return [record for record in self.records if record.point is None]


def _scan_setup(setup: SimulationSetup, thz: ThzWaveform, delay: float, mode: ScanMode) -> SimulationSetup:
    if mode is ScanMode.FULL_WAVE:
        return setup.with_thz(thz.shifted(-delay))
    return setup.with_static_thz(float(thz_field_at(thz, delay)))


def simulate_scan(
    setup: SimulationSetup,
    thz: ThzWaveform,
    delays: Sequence[float] | NDArray[np.float64],
    mode: ScanMode | str = ScanMode.FULL_WAVE,
    *,
    coefficient: float | None = None,
    parallelism: int | None = None,
    strict: bool = False,
) -> DelayScan:
    """
    η at every delay, computed by the TDSE or by the analytic model.

    Delays run concurrently. A delay whose simulation fails keeps an error
    record and the rest of the scan completes.

    Raises:
        DomainError: If the delays are empty or not strictly increasing, or
            if `strict` is set and the probe or THz peak lies outside the
            working range. Both checks happen before any delay is simulated.
    """
    mode = ScanMode(mode)
    coefficient = settings.cutoff_coefficient if coefficient is None else coefficient
    probe = setup.probe
    delays = [float(delay) for delay in delays]
    if not delays:
        raise DomainError("a delay scan needs at least one delay")
    if any(later <= earlier for earlier, later in zip(delays, delays[1:])):
        raise DomainError("scan delays must be strictly increasing", detail={"delays": len(delays)})

    guard = working_range_guard(probe, thz.peak_magnitude)
    if not guard.passed:
        message = f"scan outside the working range: {', '.join(guard.warnings)}"
        if strict:
            raise DomainError(message)
        logger.warning(message)

    benchmarks = [float(thz_field_at(thz, delay)) for delay in delays]
    order = setup.monitored_order

    if mode is ScanMode.ANALYTIC:
        records = tuple(
            DelayRecord(
                delay,
                analytic_point(
                    order, asymmetry_parameter(probe.peak_amplitude, probe.carrier_frequency, value), coefficient
                ),
                value,
            )
            for delay, value in zip(delays, benchmarks, strict=True)
        )
    else:
        setups = [_scan_setup(setup, thz, delay, mode) for delay in delays]
        outcomes = map_points(evaluate_point, setups, parallelism=parallelism)
        records = tuple(
            DelayRecord(
                delays[outcome.index],
                outcome.value,
                benchmarks[outcome.index],
                None if outcome.ok else str(outcome.error),
            )
            for outcome in outcomes
        )

    logger.info(f"{mode.value} scan of {len(delays)} delays at H{order} finished")
    return DelayScan(
        records=records,
        probe=probe,
        thz=thz,
        mode=mode,
        order=order,
        coefficient=coefficient,
        metadata={"setup": setup.descriptor(), "guard": guard.warnings},
    )


@dataclass(frozen=True)
class ReconstructedWaveform:
    """
    |E_T| recovered at every delay, with per-sample validity flags.

    Error figures use the samples flagged `ok` only and are None when there
    are none or the scan had no benchmark.
    """

    delays: NDArray[np.float64]
    eta: NDArray[np.float64]
    magnitude: NDArray[np.float64]
    flags: tuple[SampleFlag, ...]
    benchmark: NDArray[np.float64] | None
    coefficient: float
    rms_error: float | None
    relative_rms_error: float | None

    @property
    def delays_fs(self) -> NDArray[np.float64]:
        return np.asarray(au_to_fs(self.delays), dtype=float)

    @property
    def field_kv_cm(self) -> NDArray[np.float64]:
        return np.asarray(field_to_kv_per_cm(self.magnitude), dtype=float)

    @property
    def valid(self) -> NDArray[np.bool_]:
        return np.array([flag is SampleFlag.OK for flag in self.flags], dtype=bool)

    def to_columns(self) -> dict[str, Any]:
        columns: dict[str, Any] = {
            "delay_fs": self.delays_fs,
            "eta": self.eta,
            "ET_abs_au": self.magnitude,
            "ET_abs_kVcm": self.field_kv_cm,
            "flag": [flag.value for flag in self.flags],
        }
        if self.benchmark is not None:
            columns["ET_benchmark_kVcm"] = np.asarray(field_to_kv_per_cm(self.benchmark), dtype=float)
        return columns


def reconstruct(scan: DelayScan, coefficient: float | None = None) -> ReconstructedWaveform:
    """
    Inverts η at every delay of `scan` for |E_T|.

    Samples are flagged rather than dropped: `failed` when the delay has no
    result, `saturated` for pure-even points, `out-of-range` when the probe
    lies outside the working range or the estimate exceeds the perturbative
    limit, and `low-signal` when the estimated γ is below 0.1.
    """
    coefficient = scan.coefficient if coefficient is None else coefficient
    probe = scan.probe
    guard = working_range_guard(probe, scan.thz.peak_magnitude)
    probe_in_range = guard.check("intensity").passed and guard.check("wavelength").passed

    eta: list[float] = []
    estimates: list[float] = []
    flags: list[SampleFlag] = []
    for record in scan.records:
        if record.point is None:
            eta.append(math.nan)
            estimates.append(math.nan)
            flags.append(SampleFlag.FAILED)
            continue
        estimate = invert_ratio(record.point.eta, probe.peak_amplitude, probe.carrier_frequency, coefficient)
        gamma = asymmetry_parameter(probe.peak_amplitude, probe.carrier_frequency, estimate.value)
        eta.append(record.point.eta)
        estimates.append(estimate.value)
        if estimate.saturated:
            flags.append(SampleFlag.SATURATED)
        elif not probe_in_range or gamma > PERTURBATIVE_LIMIT:
            flags.append(SampleFlag.OUT_OF_RANGE)
        elif gamma < LOW_SIGNAL_LIMIT:
            flags.append(SampleFlag.LOW_SIGNAL)
        else:
            flags.append(SampleFlag.OK)

    benchmark = np.array([record.benchmark for record in scan.records])
    field_values = np.array(estimates)
    valid = np.array([flag is SampleFlag.OK for flag in flags], dtype=bool)

    rms_error: float | None = None
    relative_rms_error: float | None = None
    if valid.any():
        rms_error = float(np.sqrt(np.mean((field_values[valid] - np.abs(benchmark[valid])) ** 2)))
        peak = float(np.max(np.abs(benchmark)))
        relative_rms_error = rms_error / peak if peak > 0 else None

    logger.info(f"reconstructed {int(valid.sum())} of {len(flags)} delays")
    return ReconstructedWaveform(
        delays=scan.delays,
        eta=np.array(eta),
        magnitude=field_values,
        flags=tuple(flags),
        benchmark=benchmark,
        coefficient=coefficient,
        rms_error=rms_error,
        relative_rms_error=relative_rms_error,
    )


def scan_manifest(scan: DelayScan, waveform: ReconstructedWaveform | None = None) -> dict[str, Any]:
    """
    JSON-ready record of a scan: inputs and per-delay status.
    """
    flags = waveform.flags if waveform is not None else (None,) * len(scan.records)
    return {
        "mode": scan.mode.value,
        "order": scan.order,
        "coefficient": scan.coefficient,
        "probe": scan.probe.descriptor(),
        "thz": scan.thz.descriptor(),
        "setup": scan.metadata.get("setup"),
        "guard_warnings": scan.metadata.get("guard", []),
        "delays": [
            {
                "delay_fs": float(au_to_fs(record.delay)),
                "status": "failed" if record.point is None else "ok",
                "flag": flag.value if flag is not None else None,
                "error": record.error,
            }
            for record, flag in zip(scan.records, flags, strict=True)
        ],
    }

