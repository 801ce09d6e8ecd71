from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

from sayer import Option

from oddeven.conf import settings
from oddeven.config import RunConfig, load_config, resolve_output_dir
from oddeven.exceptions import ConfigError, OddEvenError
from oddeven.logging import logger
from oddeven.utils.console import error_console
from oddeven.utils.ui import error

EXIT_FAILURE = 1
EXIT_CONFIG = 2

ConfigOption = Annotated[str | None, Option(None, help="Path to a JSON run configuration.")]
OutOption = Annotated[
    str | None,
    Option(None, help="Output directory. Overrides the config and ODDEVEN_OUTPUT_DIR."),
]
SvgOption = Annotated[bool, Option(False, help="Also render an SVG plot next to the CSV.")]
ParallelOption = Annotated[
    int | None,
    Option(None, help="Number of simulations run at once. Defaults to every core."),
]
SyntheticOption = Annotated[bool, Option(False, help="Bypass the TDSE with the analytic or injected signal.")]


@contextmanager
def reporting_errors() -> Iterator[None]:
    """
    Turns toolkit errors into a message on stderr and an exit code.

    Configuration errors exit with 2, every other toolkit error with 1.
    """
    try:
        yield
    except ConfigError as exc:
        error(f"invalid configuration: {exc}")
        raise SystemExit(EXIT_CONFIG) from exc
    except OddEvenError as exc:
        error(str(exc))
        if settings.debug:
            error_console.print_exception()
        logger.debug(f"{type(exc).__name__}: {exc.detail}")
        raise SystemExit(EXIT_FAILURE) from exc


def load_run_config(path: str | None) -> RunConfig:
    """
    The configuration at `path`, or the defaults when no path is given.
    """
    if path is None:
        return RunConfig()
    return load_config(path, RunConfig)


def output_directory(out: str | None, config: RunConfig | None = None) -> Path:
    directory = resolve_output_dir(out, config)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def wants_svg(flag: bool, config: RunConfig | None = None) -> bool:
    return flag or bool(config is not None and config.output.svg)


def parallelism_for(cli_value: int | None, config: RunConfig | None = None) -> int | None:
    if cli_value is not None:
        if cli_value < 1:
            raise ConfigError("--parallel must be at least 1")
        return cli_value
    return config.parallelism if config is not None else None
