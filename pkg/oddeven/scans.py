"""
Parameter sweeps of η and their comparison on the asymmetry-parameter axis.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from oddeven.config import ScanConfig
from oddeven.exceptions import CollapseError, DomainError
from oddeven.logging import logger
from oddeven.orbits import analytic_point, analytic_ratio, classify_regime
from oddeven.pipeline import SimulationSetup, evaluate_point
from oddeven.runner import map_points
from oddeven.spectrum import EvenOddPoint

SCAN_COLUMNS = (
    "ET_au",
    "gamma",
    "eta",
    "I_even",
    "I_odd_avg",
    "flag",
    "sweep_value",
    "order",
    "eta_analytic",
    "regime",
)


@dataclass(frozen=True)
class ScanPoint:
    sweep_value: float | str
    setup: SimulationSetup
    point: EvenOddPoint | None
    error: str | None = None

    @property
    def thz_field(self) -> float:
        return self.setup.static_thz or 0.0

    @property
    def gamma(self) -> float:
        return self.setup.gamma or 0.0


@dataclass(frozen=True)
class ScanResult:
    label: str
    variable: str
    points: tuple[ScanPoint, ...]
    coefficient: float

    @property
    def gamma(self) -> NDArray[np.float64]:
        return np.array([p.gamma for p in self.points])

    @property
    def eta(self) -> NDArray[np.float64]:
        return np.array([p.point.eta if p.point else math.nan for p in self.points])

    def rows(self) -> list[dict[str, Any]]:
        rows = []
        for p in self.points:
            point = p.point
            rows.append(
                {
                    "ET_au": p.thz_field,
                    "gamma": p.gamma,
                    "eta": point.eta if point else math.nan,
                    "I_even": point.even_intensity if point else math.nan,
                    "I_odd_avg": point.odd_average if point else math.nan,
                    "flag": point.flag.value if point else "failed",
                    "sweep_value": p.sweep_value,
                    "order": p.setup.monitored_order,
                    "eta_analytic": analytic_ratio(abs(p.gamma), self.coefficient),
                    "regime": classify_regime(abs(p.gamma), self.coefficient).regime.value,
                }
            )
        return rows


def _sort_key(value: float | str) -> tuple[int, float | str]:
    return (1, value) if isinstance(value, str) else (0, float(value))


def run_scan(
    scan: ScanConfig,
    *,
    synthetic: bool = False,
    parallelism: int | None = None,
) -> ScanResult:
    """
    η for every sweep value of `scan`, ordered by sweep value.

    With `synthetic` the TDSE is replaced by the two-burst model, which
    makes a sweep instantaneous. Failed points are kept with their error.
    """
    values = sorted(scan.values, key=_sort_key)
    setups = [scan.point_config(value).build_setup() for value in values]
    coefficient = scan.base.coefficient

    if synthetic:
        points = tuple(
            ScanPoint(value, setup, analytic_point(setup.monitored_order, setup.gamma or 0.0, coefficient))
            for value, setup in zip(values, setups, strict=True)
        )
    else:
        outcomes = map_points(
            evaluate_point, setups, parallelism=parallelism if parallelism is not None else scan.base.parallelism
        )
        points = tuple(
            ScanPoint(values[o.index], o.item, o.value, None if o.ok else str(o.error)) for o in outcomes
        )

    failed = sum(1 for p in points if p.point is None)
    logger.info(f"scan '{scan.display_label}': {len(points) - failed} of {len(points)} points succeeded")
    return ScanResult(label=scan.display_label, variable=scan.variable, points=points, coefficient=coefficient)


def locate_crossings(gamma: Sequence[float], eta: Sequence[float], level: float = 1.0) -> list[float]:
    """
    γ values where η crosses `level`, interpolating log η linearly in γ.

    Points with non-positive or non-finite η are skipped.
    """
    if level <= 0:
        raise DomainError("crossing level must be positive")
    g = np.asarray(gamma, dtype=float)
    e = np.asarray(eta, dtype=float)
    keep = np.isfinite(e) & (e > 0) & np.isfinite(g)
    g, e = g[keep], e[keep]
    order = np.argsort(g, kind="stable")
    g, offset = g[order], np.log(e[order]) - math.log(level)

    crossings: list[float] = []
    for i in range(len(g) - 1):
        a, b = offset[i], offset[i + 1]
        if a == 0:
            crossings.append(float(g[i]))
        elif a * b < 0:
            crossings.append(float(g[i] + (g[i + 1] - g[i]) * a / (a - b)))
    if len(offset) and offset[-1] == 0:
        crossings.append(float(g[-1]))
    return crossings


@dataclass(frozen=True)
class CollapseResult:
    gamma: NDArray[np.float64]
    curves: dict[str, NDArray[np.float64]]
    deviation: float
    pairwise: dict[tuple[str, str], float]

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"gamma": float(g), "eta": float(curve[i]), "config_id": label}
            for label, curve in self.curves.items()
            for i, g in enumerate(self.gamma)
        ]


def _curve_on_grid(result: ScanResult, grid: NDArray[np.float64]) -> NDArray[np.float64]:
    gamma = np.abs(result.gamma)
    eta = result.eta
    keep = np.isfinite(eta) & (eta > 0)
    gamma, eta = gamma[keep], eta[keep]
    if gamma.size < 2 or gamma.min() > grid[0] or gamma.max() < grid[-1]:
        span = f"[{gamma.min():.3f}, {gamma.max():.3f}]" if gamma.size else "nothing"
        raise CollapseError(
            f"scan '{result.label}' covers {span} in gamma, not [{grid[0]:.3f}, {grid[-1]:.3f}]",
            detail={"label": result.label},
        )
    order = np.argsort(gamma, kind="stable")
    return np.exp(np.interp(grid, gamma[order], np.log(eta[order])))


def collapse(
    results: Sequence[ScanResult],
    gamma_min: float = 0.15,
    gamma_max: float = 0.55,
    grid_points: int = 41,
) -> CollapseResult:
    """
    Puts η(γ) of several scans on a common γ grid and measures how far apart
    they are: the largest max(ηi/ηj, ηj/ηi) − 1 over every pair and grid point.

    Raises:
        CollapseError: If fewer than two scans are given or a scan does not
            cover the γ interval.
    """
    if len(results) < 2:
        raise CollapseError("a collapse needs at least two scans")
    grid = np.linspace(gamma_min, gamma_max, grid_points)

    curves: dict[str, NDArray[np.float64]] = {}
    for index, result in enumerate(results):
        label = result.label if result.label not in curves else f"{result.label}-{index}"
        curves[label] = _curve_on_grid(result, grid)

    pairwise: dict[tuple[str, str], float] = {}
    for (a, curve_a), (b, curve_b) in itertools.combinations(curves.items(), 2):
        ratio = np.maximum(curve_a / curve_b, curve_b / curve_a)
        pairwise[(a, b)] = float(np.max(ratio) - 1.0)

    deviation = max(pairwise.values())
    logger.info(f"collapse of {len(curves)} scans over gamma [{gamma_min}, {gamma_max}]: deviation {deviation:.3f}")
    return CollapseResult(gamma=grid, curves=curves, deviation=deviation, pairwise=pairwise)
