"""
Full-scale TDSE checks of the even-odd response. Every test here propagates
the desk-scale (1600 nm, 2.0×10¹⁴ W/cm², 5 cycles) or the 2000 nm,
2.5×10¹⁴ W/cm², 10-cycle probe and runs only with --run-slow.
"""

import math
import os
from dataclasses import replace

import numpy as np
import pytest

from oddeven.conf import settings
from oddeven.config import AtomConfig, ProbeConfig, RunConfig, ScanConfig, ThzConfig
from oddeven.fields import ProbePulse, ThzPulse, field_to_kv_per_cm
from oddeven.orbits import analytic_ratio
from oddeven.pipeline import run_simulation
from oddeven.sampling import ScanMode, delays_between, reconstruct, simulate_scan
from oddeven.scans import ScanResult, collapse, locate_crossings, run_scan
from oddeven.spectrum import cutoff_order, even_to_odd_ratio, harmonic_intensity, locate_cutoff

pytestmark = pytest.mark.slow

WORKERS = os.cpu_count() or 1
C = 2.558

DESK = RunConfig(probe=ProbeConfig(intensity_w_cm2=2.0e14, wavelength_nm=1600.0, cycles=5))
PAPER = RunConfig(probe=ProbeConfig(intensity_w_cm2=2.5e14, wavelength_nm=2000.0, cycles=10))

LAW_GAMMAS = (0.14, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.56)
COLLAPSE_GAMMAS = (0.14, 0.25, 0.35, 0.45, 0.56)
REVERSAL_GAMMAS = tuple(round(0.1 * k, 1) for k in range(1, 21))


def thz_kv_cm(probe: ProbePulse, gamma: float) -> float:
    return float(field_to_kv_per_cm(gamma * probe.carrier_frequency**3 / probe.peak_amplitude))


def gamma_sweep(base: RunConfig, gammas, label: str) -> ScanResult:
    probe = base.probe.to_pulse()
    scan = ScanConfig(base=base, variable="ET", values=[thz_kv_cm(probe, g) for g in gammas], label=label)
    return run_scan(scan, parallelism=WORKERS)


@pytest.fixture(scope="module")
def desk_baseline():
    return run_simulation(DESK.build_setup())


@pytest.fixture(scope="module")
def paper_baseline():
    return run_simulation(PAPER.build_setup())


@pytest.fixture(scope="module")
def desk_sweep():
    return gamma_sweep(DESK, LAW_GAMMAS, "desk")


@pytest.fixture(scope="module")
def collapse_reference():
    return gamma_sweep(DESK, COLLAPSE_GAMMAS, "desk")


@pytest.fixture(scope="module")
def desk_thz():
    return ThzPulse.from_lab_units(257.0, 1.3)


@pytest.fixture(scope="module")
def desk_delays():
    return delays_between(-1150.0, 1150.0, 24)


@pytest.fixture(scope="module")
def quasi_static_scan(desk_thz, desk_delays):
    return simulate_scan(DESK.build_setup(), desk_thz, desk_delays, ScanMode.QUASI_STATIC, parallelism=WORKERS)


@pytest.mark.parametrize("baseline", ["desk_baseline", "paper_baseline"])
def test_symmetric_probe_emits_only_odd_harmonics(request, baseline):
    result = request.getfixturevalue(baseline)

    assert result.setup.static_thz == 0.0
    assert result.point.eta < settings.pure_odd_floor


def test_flat_top_acceleration_flips_sign_every_half_cycle(desk_baseline):
    signal = desk_baseline.signal
    probe = signal.probe
    half = 0.5 * probe.period
    # Absorption shrinks the emitter from one half cycle to the next.
    per_electron = signal.acceleration / signal.norm
    inside = (signal.times >= probe.flat_top_start) & (signal.times + half <= probe.flat_top_end)

    current = per_electron[inside]
    later = np.interp(signal.times[inside] + half, signal.times, per_electron)
    residual = math.sqrt(np.mean((later + current) ** 2) / np.mean(current**2))

    assert residual < 0.01


def test_reversing_the_static_field_keeps_the_spectrum():
    probe = DESK.probe.to_pulse()
    value = thz_kv_cm(probe, 0.3)
    up = run_simulation(replace(DESK, thz=ThzConfig(amplitude_kv_cm=value)).build_setup())
    down = run_simulation(replace(DESK, thz=ThzConfig(amplitude_kv_cm=-value)).build_setup())
    order = up.setup.monitored_order

    for n in (order - 1, order, order + 1):
        expected = harmonic_intensity(up.spectrum, n).intensity
        assert harmonic_intensity(down.spectrum, n).intensity == pytest.approx(expected, rel=0.1)
    assert even_to_odd_ratio(down.spectrum, order).eta == pytest.approx(up.point.eta, rel=0.1)


def test_plateau_ends_at_the_cutoff_law(paper_baseline):
    probe, atom = paper_baseline.setup.probe, paper_baseline.setup.atom
    expected = cutoff_order(probe.peak_amplitude, probe.carrier_frequency, atom.ionization_potential)

    located = locate_cutoff(paper_baseline.spectrum, 101, 601)

    assert expected == pytest.approx(500, abs=1)
    assert abs(located - expected) <= 5


def test_eta_follows_the_two_burst_law_on_the_desk_probe(desk_sweep):
    assert all(point.point is not None for point in desk_sweep.points)

    for gamma, eta in zip(desk_sweep.gamma, desk_sweep.eta, strict=True):
        expected = analytic_ratio(gamma, C)
        assert expected / 1.5 <= eta <= 1.5 * expected, f"gamma={gamma:.3f}: eta={eta:.4g}, law={expected:.4g}"


def test_first_crossing_on_the_desk_probe(desk_sweep):
    crossings = locate_crossings(desk_sweep.gamma, desk_sweep.eta)

    assert crossings
    assert crossings[0] == pytest.approx(math.pi / (4 * C), rel=0.15)


def test_first_crossing_on_the_paper_probe():
    probe = PAPER.probe.to_pulse()
    fields = np.linspace(3.0e-5, 6.0e-5, 7)
    scan = ScanConfig(base=PAPER, variable="ET", values=[float(field_to_kv_per_cm(v)) for v in fields])
    result = run_scan(scan, parallelism=WORKERS)

    crossings = locate_crossings(result.gamma, result.eta)
    first_field = crossings[0] * probe.carrier_frequency**3 / probe.peak_amplitude

    assert 4.0e-5 <= first_field <= 4.6e-5


def test_reversal_points_are_evenly_spaced():
    result = gamma_sweep(DESK, REVERSAL_GAMMAS, "reversal")

    crossings = locate_crossings(result.gamma, result.eta)

    assert len(crossings) >= 3
    np.testing.assert_allclose(np.diff(crossings[:3]), math.pi / (2 * C), rtol=0.2)


@pytest.mark.parametrize(
    "other",
    [
        RunConfig(probe=ProbeConfig(intensity_w_cm2=2.0e14, wavelength_nm=2000.0, cycles=5)),
        RunConfig(probe=ProbeConfig(intensity_w_cm2=2.5e14, wavelength_nm=1600.0, cycles=5)),
        RunConfig(probe=DESK.probe, atom=AtomConfig(label="Ar")),
    ],
    ids=["wavelength", "intensity", "argon"],
)
def test_eta_curves_collapse_onto_gamma(collapse_reference, other):
    compared = gamma_sweep(other, COLLAPSE_GAMMAS, "other")

    result = collapse([collapse_reference, compared])

    assert result.deviation <= 0.5


def test_quasi_static_scan_reconstructs_the_waveform(quasi_static_scan):
    waveform = reconstruct(quasi_static_scan)

    assert len(quasi_static_scan.records) >= 20
    assert not quasi_static_scan.failures
    assert waveform.valid.sum() >= 3
    assert waveform.relative_rms_error <= 0.15


def test_full_wave_scan_matches_the_quasi_static_one(quasi_static_scan, desk_thz, desk_delays):
    scan = simulate_scan(DESK.build_setup(), desk_thz, desk_delays, ScanMode.FULL_WAVE, parallelism=WORKERS)
    waveform = reconstruct(scan)
    reference = reconstruct(quasi_static_scan)
    both = waveform.valid & reference.valid

    assert not scan.failures
    assert waveform.relative_rms_error <= 0.15
    assert both.any()
    np.testing.assert_allclose(waveform.magnitude[both], reference.magnitude[both], rtol=0.1)


def test_reconstruction_cannot_see_the_thz_polarity(quasi_static_scan, desk_thz, desk_delays):
    flipped_thz = ThzPulse(-desk_thz.peak_amplitude, desk_thz.frequency, desk_thz.time_offset)
    flipped = simulate_scan(DESK.build_setup(), flipped_thz, desk_delays, ScanMode.QUASI_STATIC, parallelism=WORKERS)

    original = reconstruct(quasi_static_scan)
    mirrored = reconstruct(flipped)
    both = original.valid & mirrored.valid

    assert both.any()
    np.testing.assert_allclose(mirrored.magnitude[both], original.magnitude[both], rtol=0.1)
    assert mirrored.relative_rms_error <= 0.15
