from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray

from oddeven.exceptions import DomainError


class AtomLabel(str, Enum):
    H = "H"
    HE = "He"
    NE = "Ne"
    AR = "Ar"
    CUSTOM = "custom"


IONIZATION_POTENTIALS: dict[AtomLabel, float] = {
    AtomLabel.H: 0.5,
    AtomLabel.HE: 0.9036,
    AtomLabel.NE: 0.7925,
    AtomLabel.AR: 0.5792,
}

HYDROGEN_SOFT_CORE = math.sqrt(2.0)


def soft_core_potential(x: NDArray[np.float64], a: float, strength: float = 1.0) -> NDArray[np.float64]:
    """
    V(x) = −Z/√(x² + a²).
    """
    return -strength / np.sqrt(x**2 + a**2)


def soft_core_gradient(x: NDArray[np.float64], a: float, strength: float = 1.0) -> NDArray[np.float64]:
    """
    dV/dx = Z·x/(x² + a²)^{3/2}.
    """
    return strength * x / (x**2 + a**2) ** 1.5


@dataclass(frozen=True)
class AtomModel:
    """
    Single-active-electron atom in a soft-core Coulomb well.

    `potential_strength` scales the well; zero gives a free particle.
    """

    soft_core_parameter: float
    target_ionization_potential: float
    label: AtomLabel = AtomLabel.CUSTOM
    potential_strength: float = 1.0

    def __post_init__(self) -> None:
        if self.soft_core_parameter <= 0:
            raise DomainError(f"soft-core parameter must be positive, got {self.soft_core_parameter}")
        if self.target_ionization_potential <= 0:
            raise DomainError(f"ionization potential must be positive, got {self.target_ionization_potential}")
        if self.potential_strength < 0:
            raise DomainError("potential strength must be non-negative")

    @classmethod
    def hydrogen(cls) -> AtomModel:
        return cls(HYDROGEN_SOFT_CORE, IONIZATION_POTENTIALS[AtomLabel.H], AtomLabel.H)

    @property
    def ionization_potential(self) -> float:
        return self.target_ionization_potential

    def potential(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return soft_core_potential(x, self.soft_core_parameter, self.potential_strength)

    def potential_gradient(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return soft_core_gradient(x, self.soft_core_parameter, self.potential_strength)

    def descriptor(self) -> dict[str, Any]:
        return {
            "label": self.label.value,
            "soft_core_a": self.soft_core_parameter,
            "ionization_potential": self.target_ionization_potential,
            "potential_strength": self.potential_strength,
        }
