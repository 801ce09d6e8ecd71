from sayer import command

from oddeven.cli.common import (
    ConfigOption,
    OutOption,
    SvgOption,
    SyntheticOption,
    load_run_config,
    output_directory,
    reporting_errors,
    wants_svg,
)
from oddeven.config import config_hash
from oddeven.exceptions import DomainError
from oddeven.logging import logger
from oddeven.pipeline import run_simulation
from oddeven.spectrum import (
    compute_spectrum,
    cutoff_order,
    even_to_odd_ratio,
    harmonic_intensity,
    synthetic_signal,
    window_sensitivity,
)
from oddeven.utils.output import write_columns, write_svg_plot
from oddeven.utils.ui import info, success, table, warning


@command
def spectrum(
    config: ConfigOption,
    out: OutOption,
    svg: SvgOption,
    synthetic: SyntheticOption,
) -> None:
    """
    Run one simulation and write its harmonic spectrum.

    The spectrum goes to spectrum.csv (order, intensity) and the dipole
    acceleration to dipole.csv. The even-to-odd ratio at the monitored order is
    printed together with its sensitivity to the emission window.

    With --synthetic the TDSE is skipped and a single cosine at the configured
    `synthetic_order` is analysed instead.
    """
    with reporting_errors():
        run_config = load_run_config(config)
        setup = run_config.build_setup()
        probe = setup.probe

        if synthetic:
            injected = run_config.synthetic_order
            order = setup.order or injected + injected % 2
            signal = synthetic_signal(probe, {injected: 1.0}, dt=setup.grid.dt)
            spec = compute_spectrum(signal, setup.window)
            point = even_to_odd_ratio(spec, order)
        else:
            order = setup.monitored_order
            result = run_simulation(setup)
            signal, spec, point = result.signal, result.spectrum, result.point

        directory = output_directory(out, run_config)
        digest = config_hash(run_config)
        write_columns(directory / "spectrum.csv", spec.to_columns(), config_hash=digest)
        write_columns(directory / "dipole.csv", signal.to_columns(), config_hash=digest)
        if wants_svg(svg, run_config):
            write_svg_plot(
                directory / "spectrum.svg",
                spec.orders,
                spec.intensity,
                xlabel="harmonic order",
                ylabel="intensity (arb. u.)",
                title=f"{probe.wavelength_nm:.0f} nm, {probe.intensity:.3g} W/cm²",
                log_y=True,
            )

        rows = [
            {"order": n, "intensity": harmonic_intensity(spec, n).intensity} for n in (order - 1, order, order + 1)
        ]
        table(rows, title="Harmonics around the monitored order")
        info(f"eta(H{order}) = {point.eta:.6g} ({point.flag.value})")

        try:
            sensitivity = window_sensitivity(signal, order, carrier_frequency=probe.carrier_frequency)
        except DomainError as exc:
            logger.debug(f"window sensitivity unavailable: {exc}")
        else:
            if sensitivity.exceeds():
                warning(
                    f"eta changes by {sensitivity.relative_change:.1%} between the flat-top and full-pulse windows"
                )

        if not synthetic:
            predicted = cutoff_order(probe.peak_amplitude, probe.carrier_frequency, setup.atom.ionization_potential)
            info(f"cutoff law predicts harmonic {predicted:.1f}")

    success(f"spectrum written to {directory / 'spectrum.csv'}")
