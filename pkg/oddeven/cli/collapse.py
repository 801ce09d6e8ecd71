from typing import Annotated

from sayer import Option, command

from oddeven.__version__ import get_version
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
from oddeven.config import CollapseConfig, config_hash, load_config
from oddeven.scans import collapse as collapse_scans
from oddeven.scans import run_scan
from oddeven.utils.output import write_csv, write_json, write_svg_plot
from oddeven.utils.ui import info, success


@command
def collapse(
    config: Annotated[str, Option(..., help="Path to a JSON collapse configuration listing the scans.")],
    out: OutOption,
    svg: SvgOption,
    parallel: ParallelOption,
    synthetic: SyntheticOption,
) -> None:
    """
    Compare several scans on the common asymmetry-parameter axis.

    Every scan is interpolated onto one gamma grid; collapse.csv holds the
    curves and collapse.json the largest pairwise deviation.
    """
    with reporting_errors():
        collapse_config = load_config(config, CollapseConfig)
        results = [
            run_scan(scan, synthetic=synthetic, parallelism=parallelism_for(parallel, scan.base))
            for scan in collapse_config.scans
        ]
        outcome = collapse_scans(
            results,
            gamma_min=collapse_config.gamma_min,
            gamma_max=collapse_config.gamma_max,
            grid_points=collapse_config.grid_points,
        )

        directory = output_directory(out, collapse_config.scans[0].base)
        digest = config_hash(collapse_config)
        path = write_csv(directory / "collapse.csv", ("gamma", "eta", "config_id"), outcome.rows(), config_hash=digest)
        write_json(
            directory / "collapse.json",
            {
                "version": get_version(),
                "config": digest,
                "gamma_min": collapse_config.gamma_min,
                "gamma_max": collapse_config.gamma_max,
                "deviation": outcome.deviation,
                "pairwise": [
                    {"first": first, "second": second, "deviation": value}
                    for (first, second), value in outcome.pairwise.items()
                ],
            },
        )
        if wants_svg(svg, collapse_config.scans[0].base):
            write_svg_plot(
                directory / "collapse.svg",
                outcome.gamma,
                outcome.curves,
                xlabel="gamma",
                ylabel="eta",
                log_y=True,
            )

    info(f"largest pairwise deviation {outcome.deviation:.3f} (factor {1.0 + outcome.deviation:.3f})")
    success(f"collapse written to {path}")
