import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oddeven.exceptions import DomainError
from oddeven.fields import (
    AsymmetryPoint,
    BroadbandThz,
    CompositeField,
    ProbePulse,
    ThzPulse,
    asymmetry_parameter,
    au_to_fs,
    field_to_intensity,
    field_to_kv_per_cm,
    frequency_to_wavelength,
    fs_to_au,
    intensity_to_field,
    kv_per_cm_to_field,
    ponderomotive_energy,
    probe_field_at,
    thz_field_at,
    thz_to_frequency,
    wavelength_to_frequency,
)

finite_fields = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
positive = st.floats(min_value=1e-3, max_value=10.0, allow_nan=False)


@pytest.mark.parametrize(
    "intensity,expected",
    [(2.5e14, 0.08440), (3.50945e16, 1.0), (1.0e14, 0.05338)],
)
def test_intensity_to_field(intensity, expected):
    assert intensity_to_field(intensity) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize(
    "wavelength,expected",
    [(2000.0, 0.022782), (45.5633, 1.0), (231000.0, 1.972e-4)],
)
def test_wavelength_to_frequency(wavelength, expected):
    assert wavelength_to_frequency(wavelength) == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_conversions_reject_non_positive_inputs(bad):
    with pytest.raises(DomainError):
        intensity_to_field(bad)
    with pytest.raises(DomainError):
        wavelength_to_frequency(bad)


def test_field_to_kv_per_cm():
    assert field_to_kv_per_cm(1e-5) == pytest.approx(51.4, abs=0.05)
    assert field_to_kv_per_cm(0.0) == 0.0
    assert field_to_kv_per_cm(5.0e-5) == pytest.approx(257.0, abs=0.2)


def test_thz_frequency_matches_its_wavelength():
    # 1.3 THz is a 231 µm wave.
    assert frequency_to_wavelength(thz_to_frequency(1.3)) == pytest.approx(230_610, rel=2e-3)


@given(finite_fields)
def test_kv_per_cm_round_trip(value):
    assert kv_per_cm_to_field(field_to_kv_per_cm(value)) == pytest.approx(value, rel=1e-12, abs=1e-300)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_time_round_trip(value):
    assert au_to_fs(fs_to_au(value)) == pytest.approx(value, rel=1e-12, abs=1e-9)


@given(positive)
def test_intensity_round_trip(field):
    assert intensity_to_field(field_to_intensity(field)) == pytest.approx(field, rel=1e-12)


def test_ponderomotive_energy():
    assert ponderomotive_energy(0.0844, 0.022782) == pytest.approx(0.0844**2 / (4 * 0.022782**2))


def test_probe_field_examples():
    probe = ProbePulse(0.0844, 0.022782, total_cycles=10, ramp_cycles=1)

    assert probe_field_at(probe, 0.0) == pytest.approx(0.0844)
    assert probe_field_at(probe, probe.start - 10.0) == 0.0
    assert probe_field_at(probe, probe.end + 10.0) == 0.0

    mid_ramp = probe.start + 0.5 * probe.ramp_duration
    assert abs(probe_field_at(probe, mid_ramp)) == pytest.approx(0.0844 / 2, rel=1e-9)


def test_probe_envelope_is_trapezoidal_and_symmetric():
    probe = ProbePulse(0.05, 0.05, total_cycles=6, ramp_cycles=2)
    t = np.linspace(probe.start - 50, probe.end + 50, 4001)
    envelope = probe.envelope(t)

    assert envelope.min() >= 0.0
    assert envelope.max() <= 1.0
    np.testing.assert_allclose(envelope, probe.envelope(-t), atol=1e-12)
    flat = (t >= probe.flat_top_start) & (t <= probe.flat_top_end)
    np.testing.assert_allclose(envelope[flat], 1.0, atol=1e-12)


def test_probe_without_ramps_is_rectangular():
    probe = ProbePulse(0.05, 0.05, total_cycles=3, ramp_cycles=0)

    assert probe.envelope(probe.start + 1e-9) == 1.0
    assert probe.envelope(probe.end + 1e-6) == 0.0


def test_probe_validation():
    with pytest.raises(DomainError):
        ProbePulse(0.05, 0.05, total_cycles=2, ramp_cycles=1)
    with pytest.raises(DomainError):
        ProbePulse(-0.05, 0.05)
    with pytest.raises(DomainError):
        ProbePulse(0.05, 0.05, ramp_cycles=-1)


def test_probe_from_lab_units():
    probe = ProbePulse.from_lab_units(2.5e14, 2000.0, 10)

    assert probe.intensity == pytest.approx(2.5e14)
    assert probe.wavelength_nm == pytest.approx(2000.0)
    assert probe.flat_top_cycles == 8
    assert probe.duration == pytest.approx(10 * 2 * math.pi / probe.carrier_frequency)


def test_thz_field_examples():
    thz = ThzPulse(1e-4, 2e-4, time_offset=300.0)

    assert thz_field_at(thz, 300.0) == 0.0
    quarter = 300.0 + math.pi / (2 * 2e-4)
    assert thz_field_at(thz, quarter) == pytest.approx(1e-4 * math.exp(-1 / 144), rel=1e-12)
    assert thz_field_at(thz, 1e9) == pytest.approx(0.0, abs=1e-30)


@given(st.floats(min_value=0.0, max_value=1e5, allow_nan=False))
def test_thz_field_is_odd_about_its_offset(s):
    thz = ThzPulse(3e-5, 1.97e-4, time_offset=-1234.0)

    assert thz_field_at(thz, thz.time_offset + s) == pytest.approx(-thz_field_at(thz, thz.time_offset - s), abs=1e-15)


def test_thz_magnitude_never_exceeds_amplitude():
    thz = ThzPulse.from_lab_units(257.0, 1.3)
    t = np.linspace(-8, 8, 20001) * thz.envelope_width

    assert np.max(np.abs(thz_field_at(thz, t))) <= abs(thz.peak_amplitude)
    assert thz.peak_magnitude <= abs(thz.peak_amplitude)
    assert thz.peak_magnitude == pytest.approx(abs(thz.peak_amplitude), rel=0.01)


def test_thz_shift_moves_the_waveform():
    thz = ThzPulse(1e-4, 2e-4)
    shifted = thz.shifted(500.0)

    assert thz_field_at(shifted, 700.0) == pytest.approx(thz_field_at(thz, 200.0))


def test_broadband_thz_sums_its_components():
    first = ThzPulse(1e-4, 2e-4)
    second = ThzPulse(-5e-5, 4e-4, time_offset=100.0)
    broadband = BroadbandThz((first, second))
    t = np.linspace(-3000, 3000, 101)

    np.testing.assert_allclose(thz_field_at(broadband, t), first.field_at(t) + second.field_at(t))
    assert broadband.shifted(10.0).components[1].time_offset == pytest.approx(110.0)

    with pytest.raises(DomainError):
        BroadbandThz(())


def test_composite_field_modes():
    probe = ProbePulse(0.05, 0.05)
    thz = ThzPulse(1e-4, 2e-4)

    assert CompositeField(probe).is_symmetric
    assert not CompositeField(probe, static_thz_value=1e-5).is_symmetric
    assert CompositeField(probe, static_thz_value=1e-5).field_at(0.0) == pytest.approx(0.05 + 1e-5)
    assert CompositeField(probe, thz=thz).field_at(10.0) == pytest.approx(
        probe.field_at(10.0) + thz.field_at(10.0)
    )
    with pytest.raises(DomainError):
        CompositeField(probe, thz=thz, static_thz_value=1e-5)


@pytest.mark.parametrize(
    "thz_field,expected",
    [(4.30e-5, 0.307), (0.0, 0.0), (4.0e-5, 0.286)],
)
def test_asymmetry_parameter_examples(thz_field, expected):
    assert asymmetry_parameter(0.08440, 0.022782, thz_field) == pytest.approx(expected, abs=1e-3)


@given(positive, positive, finite_fields, positive)
def test_asymmetry_parameter_scaling(e0, w0, et, a):
    gamma = asymmetry_parameter(e0, w0, et)

    assert asymmetry_parameter(a * e0, w0, et) == pytest.approx(a * gamma, rel=1e-9, abs=1e-300)
    assert asymmetry_parameter(e0, a * w0, et) == pytest.approx(gamma / a**3, rel=1e-9, abs=1e-300)


def test_asymmetry_point_records_its_inputs():
    point = AsymmetryPoint.from_fields(0.0844, 0.022782, 4.3e-5)

    assert point.gamma == pytest.approx(0.307, abs=1e-3)
    assert point.thz_field == 4.3e-5
