from typing import Annotated

from sayer import Option, command

from oddeven.cli.common import (
    OutOption,
    ParallelOption,
    SvgOption,
    SyntheticOption,
    output_directory,
    parallelism_for,
    reporting_errors,
    wants_svg,
)
from oddeven.config import ScanConfig, config_hash, load_config
from oddeven.scans import SCAN_COLUMNS, locate_crossings, run_scan
from oddeven.utils.output import write_csv, write_svg_plot
from oddeven.utils.ui import info, success, warning


@command
def scan(
    config: Annotated[str, Option(..., help="Path to a JSON scan configuration.")],
    out: OutOption,
    svg: SvgOption,
    parallel: ParallelOption,
    synthetic: SyntheticOption,
) -> None:
    """
    Sweep one variable and record the even-to-odd ratio at every value.

    Rows of scan.csv are ordered by sweep value whatever order the points
    finish in. Failed points are kept with the flag `failed`.
    """
    with reporting_errors():
        scan_config = load_config(config, ScanConfig)
        result = run_scan(
            scan_config,
            synthetic=synthetic,
            parallelism=parallelism_for(parallel, scan_config.base),
        )

        directory = output_directory(out, scan_config.base)
        path = write_csv(directory / "scan.csv", SCAN_COLUMNS, result.rows(), config_hash=config_hash(scan_config))
        if wants_svg(svg, scan_config.base):
            write_svg_plot(
                directory / "scan.svg",
                abs(result.gamma),
                result.eta,
                xlabel="gamma",
                ylabel="eta",
                title=result.label,
                log_y=True,
            )

    failed = [p for p in result.points if p.point is None]
    if failed:
        warning(f"{len(failed)} of {len(result.points)} points failed")
    crossings = locate_crossings(abs(result.gamma), result.eta)
    if crossings:
        info("eta = 1 at gamma " + ", ".join(f"{g:.4f}" for g in crossings))
    success(f"scan written to {path}")
