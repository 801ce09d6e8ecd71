from typing import TYPE_CHECKING

from monkay import Monkay

from .__version__ import get_version

if TYPE_CHECKING:
    from .conf import settings
    from .conf.global_settings import Settings
    from .config import CollapseConfig, RunConfig, ScanConfig, load_config
    from .exceptions import (
        CheckpointError,
        CollapseError,
        ConfigError,
        ConvergenceError,
        DomainError,
        NumericalInstabilityError,
        OddEvenError,
        SolverError,
    )
    from .fields import (
        BroadbandThz,
        CompositeField,
        ProbePulse,
        ThzPulse,
        asymmetry_parameter,
        field_to_kv_per_cm,
        intensity_to_field,
        probe_field_at,
        thz_field_at,
        wavelength_to_frequency,
    )
    from .orbits import (
        Trajectory,
        analytic_even_odd_spectrum,
        analytic_ratio,
        classify_regime,
        coefficient_c,
        cutoff_trajectory,
        reversal_points,
        solve_return,
    )
    from .pipeline import SimulationSetup, run_simulation
    from .sampling import invert_ratio, reconstruct, simulate_scan, working_range_guard
    from .scans import collapse, run_scan
    from .spectrum import HhgSpectrum, compute_spectrum, even_to_odd_ratio, harmonic_intensity
    from .tdse import AtomModel, GridSpec, ground_state, propagate, tune_soft_core
    from .tdse.convergence import convergence_probe

__version__ = get_version()

monkay: Monkay = Monkay(
    globals(),
    lazy_imports={
        "settings": ".conf.settings",
        "Settings": ".conf.global_settings.Settings",
        "RunConfig": ".config.RunConfig",
        "ScanConfig": ".config.ScanConfig",
        "CollapseConfig": ".config.CollapseConfig",
        "load_config": ".config.load_config",
        "OddEvenError": ".exceptions.OddEvenError",
        "DomainError": ".exceptions.DomainError",
        "ConvergenceError": ".exceptions.ConvergenceError",
        "NumericalInstabilityError": ".exceptions.NumericalInstabilityError",
        "SolverError": ".exceptions.SolverError",
        "ConfigError": ".exceptions.ConfigError",
        "CheckpointError": ".exceptions.CheckpointError",
        "CollapseError": ".exceptions.CollapseError",
        "ProbePulse": ".fields.ProbePulse",
        "ThzPulse": ".fields.ThzPulse",
        "BroadbandThz": ".fields.BroadbandThz",
        "CompositeField": ".fields.CompositeField",
        "intensity_to_field": ".fields.intensity_to_field",
        "wavelength_to_frequency": ".fields.wavelength_to_frequency",
        "field_to_kv_per_cm": ".fields.field_to_kv_per_cm",
        "probe_field_at": ".fields.probe_field_at",
        "thz_field_at": ".fields.thz_field_at",
        "asymmetry_parameter": ".fields.asymmetry_parameter",
        "GridSpec": ".tdse.GridSpec",
        "AtomModel": ".tdse.AtomModel",
        "ground_state": ".tdse.ground_state",
        "tune_soft_core": ".tdse.tune_soft_core",
        "propagate": ".tdse.propagate",
        "convergence_probe": ".tdse.convergence.convergence_probe",
        "HhgSpectrum": ".spectrum.HhgSpectrum",
        "compute_spectrum": ".spectrum.compute_spectrum",
        "harmonic_intensity": ".spectrum.harmonic_intensity",
        "even_to_odd_ratio": ".spectrum.even_to_odd_ratio",
        "Trajectory": ".orbits.Trajectory",
        "cutoff_trajectory": ".orbits.cutoff_trajectory",
        "solve_return": ".orbits.solve_return",
        "coefficient_c": ".orbits.coefficient_c",
        "analytic_ratio": ".orbits.analytic_ratio",
        "reversal_points": ".orbits.reversal_points",
        "classify_regime": ".orbits.classify_regime",
        "analytic_even_odd_spectrum": ".orbits.analytic_even_odd_spectrum",
        "SimulationSetup": ".pipeline.SimulationSetup",
        "run_simulation": ".pipeline.run_simulation",
        "invert_ratio": ".sampling.invert_ratio",
        "simulate_scan": ".sampling.simulate_scan",
        "reconstruct": ".sampling.reconstruct",
        "working_range_guard": ".sampling.working_range_guard",
        "run_scan": ".scans.run_scan",
        "collapse": ".scans.collapse",
    },
    skip_all_update=True,
    package="oddeven",
)

__all__ = [
    "BroadbandThz",
    "CheckpointError",
    "CollapseConfig",
    "CollapseError",
    "CompositeField",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "GridSpec",
    "AtomModel",
    "HhgSpectrum",
    "NumericalInstabilityError",
    "OddEvenError",
    "ProbePulse",
    "RunConfig",
    "ScanConfig",
    "Settings",
    "SimulationSetup",
    "SolverError",
    "ThzPulse",
    "Trajectory",
    "analytic_even_odd_spectrum",
    "analytic_ratio",
    "asymmetry_parameter",
    "classify_regime",
    "coefficient_c",
    "collapse",
    "compute_spectrum",
    "convergence_probe",
    "cutoff_trajectory",
    "even_to_odd_ratio",
    "field_to_kv_per_cm",
    "ground_state",
    "harmonic_intensity",
    "intensity_to_field",
    "invert_ratio",
    "load_config",
    "probe_field_at",
    "propagate",
    "reconstruct",
    "reversal_points",
    "run_scan",
    "run_simulation",
    "settings",
    "simulate_scan",
    "solve_return",
    "thz_field_at",
    "tune_soft_core",
    "wavelength_to_frequency",
    "working_range_guard",
]
