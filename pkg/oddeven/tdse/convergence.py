from __future__ import annotations

from dataclasses import dataclass

from oddeven.conf import settings
from oddeven.logging import logger
from oddeven.pipeline import SimulationSetup, evaluate_point
from oddeven.spectrum import EvenOddPoint


@dataclass(frozen=True)
class ConvergenceReport:
    order: int
    coarse: EvenOddPoint
    fine: EvenOddPoint
    relative_change: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.relative_change < self.threshold


def convergence_probe(setup: SimulationSetup, threshold: float | None = None) -> ConvergenceReport:
    """
    Runs `setup` at (dx, dt) and at (dx/2, dt/2) and compares η at the
    monitored order.

    Pure-odd results on both grids (η below `pure_odd_floor`) count as
    converged, since their relative change only measures noise.
    """
    threshold = settings.convergence_threshold if threshold is None else threshold
    coarse = evaluate_point(setup)
    fine = evaluate_point(setup.refined())

    if max(coarse.eta, fine.eta) < settings.pure_odd_floor:
        change = 0.0
    elif fine.eta == coarse.eta:
        change = 0.0
    elif fine.eta == 0.0:
        change = float("inf")
    else:
        change = abs(fine.eta - coarse.eta) / fine.eta

    report = ConvergenceReport(setup.monitored_order, coarse, fine, change, threshold)
    logger.info(
        f"convergence at H{report.order}: eta {coarse.eta:.4g} -> {fine.eta:.4g} "
        f"({change:.2%}, {'pass' if report.passed else 'fail'})"
    )
    return report
