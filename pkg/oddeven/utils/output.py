"""
Result files: CSV tables, JSON reports and SVG line plots.

Every writer is deterministic, so the same inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
from matplotlib import rcParams
from matplotlib.figure import Figure

from oddeven.__version__ import get_version
from oddeven.encoders import to_json
from oddeven.logging import logger

SVG_HASH_SALT = "oddeven"


def format_cell(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".12g")
    if value is None:
        return ""
    return value


def header_line(config_hash: str) -> str:
    return f"# oddeven {get_version()} config={config_hash}\n"


def write_csv(
    path: str | Path,
    fieldnames: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
    *,
    config_hash: str,
) -> Path:
    """
    Writes `rows` under a `# oddeven <version> config=<hash>` comment line.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(header_line(config_hash))
        writer = csv.DictWriter(handle, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: format_cell(value) for key, value in row.items()})
    logger.debug(f"wrote {path}")
    return path


def write_columns(path: str | Path, columns: Mapping[str, Any], *, config_hash: str) -> Path:
    """
    Writes equally long columns, one CSV column each, in mapping order.
    """
    names = list(columns)
    length = len(next(iter(columns.values()))) if columns else 0
    rows = ({name: columns[name][i] for name in names} for i in range(length))
    return write_csv(path, names, rows, config_hash=config_hash)


def read_csv(path: str | Path) -> tuple[str, list[dict[str, str]]]:
    """
    The header comment line and the rows of a CSV written by `write_csv`.
    """
    with Path(path).open(encoding="utf-8", newline="") as handle:
        comment = handle.readline().rstrip("\n")
        return comment, list(csv.DictReader(handle))


def write_json(path: str | Path, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(payload) + "\n", encoding="utf-8")
    logger.debug(f"wrote {path}")
    return path


def write_svg_plot(
    path: str | Path,
    x: Sequence[float] | np.ndarray,
    y: Sequence[float] | np.ndarray | Mapping[str, Sequence[float] | np.ndarray],
    *,
    xlabel: str,
    ylabel: str,
    title: str | None = None,
    log_y: bool = False,
) -> Path:
    """
    Renders line plots to SVG.

    `y` is either one series or a mapping of legend labels to series sharing
    the `x` axis. The plot carries no date metadata and a fixed id salt, so
    reruns produce identical files.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    x = np.asarray(x, dtype=float)
    if isinstance(y, Mapping):
        series = {key: np.asarray(values, dtype=float) for key, values in y.items()}
    else:
        series = {"": np.asarray(y, dtype=float)}
    if log_y:
        positive = np.concatenate([values[values > 0] for values in series.values()])
        floor = positive.min() if positive.size else 1.0
        series = {key: np.log10(np.clip(values, floor, None)) for key, values in series.items()}
        ylabel = f"log10 {ylabel}"

    figure = Figure(figsize=(8, 4.5))
    axes = figure.add_subplot()
    for label, values in series.items():
        axes.plot(x, values, linewidth=0.8, label=label or None)
    if len(series) > 1:
        axes.legend()
    axes.set_xlabel(xlabel)
    axes.set_ylabel(ylabel)
    if title:
        axes.set_title(title)
    figure.tight_layout()

    previous = rcParams["svg.hashsalt"]
    rcParams["svg.hashsalt"] = SVG_HASH_SALT
    try:
        figure.savefig(path, format="svg", metadata={"Date": None})
    finally:
        rcParams["svg.hashsalt"] = previous
    logger.debug(f"wrote {path}")
    return path
