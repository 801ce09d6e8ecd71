from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy import fft

from oddeven.conf import settings
from oddeven.exceptions import DomainError
from oddeven.fields import ProbePulse, quiver_radius


def _next_power_of_two(value: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(value, 1.0))))


@dataclass(frozen=True)
class GridSpec:
    """
    Uniform periodic grid x_i = x_min + i·dx, i = 0..N−1, plus the time step.

    The grid is the discretization of a periodic box, so x_max itself is not
    a grid point (it coincides with x_min); this keeps the FFT kinetic
    operator exact and the grid mirror-symmetric for symmetric boxes.
    """

    x_min: float
    x_max: float
    num_points: int
    dt: float

    def __post_init__(self) -> None:
        if not self.x_min < 0.0 < self.x_max:
            raise DomainError(f"grid must straddle the origin, got [{self.x_min}, {self.x_max}]")
        if self.num_points < settings.min_grid_points:
            raise DomainError(f"grid needs at least {settings.min_grid_points} points, got {self.num_points}")
        if self.dt <= 0:
            raise DomainError(f"time step must be positive, got {self.dt}")

    @classmethod
    def symmetric(cls, dx: float, num_points: int, dt: float) -> GridSpec:
        half = 0.5 * dx * num_points
        return cls(x_min=-half, x_max=half, num_points=num_points, dt=dt)

    @classmethod
    def fitted(cls, half_width: float, dx: float, dt: float) -> GridSpec:
        """
        The box [−half_width, half_width] with a power-of-two number of points
        spaced no wider than `dx`.

        The absorber therefore sits where the box rule puts it.
        """
        num_points = max(_next_power_of_two(2.0 * half_width / dx), settings.min_grid_points)
        return cls(x_min=-half_width, x_max=half_width, num_points=num_points, dt=dt)

    @classmethod
    def for_probe(cls, probe: ProbePulse, dx: float | None = None, dt: float | None = None) -> GridSpec:
        """
        Box wide enough for twice the quiver radius plus a margin, at least
        `min_half_width`, with a power-of-two number of points.
        """
        half = max(
            2.0 * quiver_radius(probe.peak_amplitude, probe.carrier_frequency) + settings.box_margin,
            settings.min_half_width,
        )
        return cls.fitted(half, dx or settings.grid_dx, dt or settings.grid_dt)

    @classmethod
    def compact(cls, dx: float | None = None, dt: float | None = None) -> GridSpec:
        """
        The smallest allowed grid at spacing `dx`; enough for bound states.
        """
        return cls.symmetric(dx or settings.grid_dx, settings.min_grid_points, dt or settings.grid_dt)

    def refined(self) -> GridSpec:
        """
        Same box with dx and dt halved.
        """
        return GridSpec(self.x_min, self.x_max, 2 * self.num_points, 0.5 * self.dt)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def dx(self) -> float:
        return self.length / self.num_points

    @property
    def half_width(self) -> float:
        return min(-self.x_min, self.x_max)

    @property
    def x(self) -> NDArray[np.float64]:
        return self.x_min + self.dx * np.arange(self.num_points)

    @property
    def k(self) -> NDArray[np.float64]:
        return 2.0 * np.pi * fft.fftfreq(self.num_points, d=self.dx)

    def mirror(self, values: NDArray[Any]) -> NDArray[Any]:
        """
        Values at −x for values given at x. Only meaningful on symmetric boxes.
        """
        return np.roll(values[::-1], 1)

    def descriptor(self) -> dict[str, Any]:
        return {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "num_points": self.num_points,
            "dx": self.dx,
            "dt": self.dt,
        }
