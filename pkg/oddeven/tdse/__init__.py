from oddeven.tdse.atoms import HYDROGEN_SOFT_CORE, IONIZATION_POTENTIALS, AtomLabel, AtomModel
from oddeven.tdse.checkpoint import load_wavefunction, save_wavefunction
from oddeven.tdse.eigen import atom_for, diagonalize_ground_state, ground_state, tune_soft_core
from oddeven.tdse.grid import GridSpec
from oddeven.tdse.propagator import AbsorberSpec, DipoleSignal, check_box, propagate
from oddeven.tdse.wavefunction import Wavefunction

__all__ = [
    "AbsorberSpec",
    "AtomLabel",
    "AtomModel",
    "DipoleSignal",
    "GridSpec",
    "HYDROGEN_SOFT_CORE",
    "IONIZATION_POTENTIALS",
    "Wavefunction",
    "atom_for",
    "check_box",
    "diagonalize_ground_state",
    "ground_state",
    "load_wavefunction",
    "propagate",
    "save_wavefunction",
    "tune_soft_core",
]
