from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from oddeven.tdse.grid import GridSpec


@dataclass
class Wavefunction:
    """
    Complex amplitudes on a grid at a given time.

    The norm is ∫|ψ|²dx; it stays at one under unitary evolution and drops
    below one once the absorber removes outgoing flux.
    """

    values: NDArray[np.complex128]
    time: float = 0.0

    def norm(self, grid: GridSpec) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * grid.dx)

    def normalized(self, grid: GridSpec) -> Wavefunction:
        return Wavefunction(self.values / np.sqrt(self.norm(grid)), self.time)

    def overlap(self, other: Wavefunction, grid: GridSpec) -> complex:
        """
        ⟨self|other⟩.
        """
        return complex(np.sum(np.conj(self.values) * other.values) * grid.dx)

    def copy(self) -> Wavefunction:
        return Wavefunction(self.values.copy(), self.time)
