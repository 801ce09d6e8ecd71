from typing import Annotated

import numpy as np
from sayer import Option, command

from oddeven.__version__ import get_version
from oddeven.cli.common import (
    ConfigOption,
    OutOption,
    ParallelOption,
    SvgOption,
    SyntheticOption,
    load_run_config,
    output_directory,
    parallelism_for,
    reporting_errors,
    wants_svg,
)
from oddeven.config import config_hash
from oddeven.fields import field_to_kv_per_cm
from oddeven.sampling import ScanMode, default_delays, delays_between, reconstruct, scan_manifest, simulate_scan
from oddeven.utils.output import write_columns, write_json, write_svg_plot
from oddeven.utils.ui import info, success, warning


@command(name="reconstruct")
def reconstruct_waveform(
    config: ConfigOption,
    out: OutOption,
    svg: SvgOption,
    parallel: ParallelOption,
    quasi_static: Annotated[bool, Option(False, help="Hold the THz field constant over each probe.")],
    synthetic: SyntheticOption,
) -> None:
    """
    Sample the configured THz waveform by scanning the probe delay.

    The even-to-odd ratio at each delay is inverted for |E_T|. waveform.csv
    holds the reconstruction next to the true field, scan_manifest.json the
    inputs and the status of every delay.
    """
    with reporting_errors():
        run_config = load_run_config(config)
        setup = run_config.build_setup().with_thz(None)
        thz = run_config.thz.to_pulse()
        if run_config.delays is not None:
            grid = run_config.delays
            delays = delays_between(grid.start_fs, grid.stop_fs, grid.count)
        else:
            delays = default_delays(setup.probe, thz)

        if synthetic:
            mode = ScanMode.ANALYTIC
        elif quasi_static or run_config.thz.mode == "quasi-static":
            mode = ScanMode.QUASI_STATIC
        else:
            mode = ScanMode.FULL_WAVE

        scan = simulate_scan(
            setup,
            thz,
            delays,
            mode,
            coefficient=run_config.coefficient,
            parallelism=parallelism_for(parallel, run_config),
        )
        waveform = reconstruct(scan)

        directory = output_directory(out, run_config)
        digest = config_hash(run_config)
        path = write_columns(directory / "waveform.csv", waveform.to_columns(), config_hash=digest)
        manifest = scan_manifest(scan, waveform)
        manifest.update(
            {
                "version": get_version(),
                "config": digest,
                "rms_error_au": waveform.rms_error,
                "relative_rms_error": waveform.relative_rms_error,
            }
        )
        write_json(directory / "scan_manifest.json", manifest)
        if wants_svg(svg, run_config):
            curves = {"reconstructed": waveform.field_kv_cm}
            if waveform.benchmark is not None:
                curves["benchmark"] = np.abs(np.asarray(field_to_kv_per_cm(waveform.benchmark), dtype=float))
            write_svg_plot(
                directory / "waveform.svg",
                waveform.delays_fs,
                curves,
                xlabel="delay (fs)",
                ylabel="|E_T| (kV/cm)",
            )

    if scan.failures:
        warning(f"{len(scan.failures)} of {len(scan.records)} delays failed")
    info(f"{int(waveform.valid.sum())} of {len(waveform.flags)} delays passed the range checks")
    if waveform.relative_rms_error is not None:
        info(f"rms error {waveform.relative_rms_error:.1%} of the peak field")
    success(f"waveform written to {path}")
