"""
Run configuration files.

Configurations are JSON documents in laboratory units (W/cm², nm, kV/cm,
THz, fs). They are molded into the frozen dataclasses below through
`oddeven.encoders.apply_structure`, which rejects unknown keys, missing
required keys and mistyped values with a `ConfigError` naming the path.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Literal, TypeVar, cast

from oddeven.conf import settings
from oddeven.encoders import apply_structure, to_builtins
from oddeven.exceptions import ConfigError
from oddeven.fields import ProbePulse, ThzPulse, kv_per_cm_to_field, thz_field_at
from oddeven.pipeline import SimulationSetup
from oddeven.spectrum import WindowKind
from oddeven.tdse import IONIZATION_POTENTIALS, AbsorberSpec, AtomLabel, AtomModel, GridSpec, atom_for

C = TypeVar("C")

AtomName = Literal["H", "He", "Ne", "Ar", "custom"]
ThzMode = Literal["static", "quasi-static", "full-wave"]
SweepVariable = Literal["ET", "intensity", "wavelength", "cycles", "atom"]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


@dataclass(frozen=True)
class ProbeConfig:
    intensity_w_cm2: float = 2.5e14
    wavelength_nm: float = 2000.0
    cycles: int = 10
    ramp_cycles: int = 1
    cep: float = 0.0

    def __post_init__(self) -> None:
        _require(self.intensity_w_cm2 > 0, "intensity must be positive")
        _require(self.wavelength_nm > 0, "wavelength must be positive")
        _require(self.ramp_cycles >= 0, "ramp cycles must be non-negative")
        _require(self.cycles >= 2 * self.ramp_cycles + 1, "cycles must exceed two ramps")

    def to_pulse(self) -> ProbePulse:
        return ProbePulse.from_lab_units(
            self.intensity_w_cm2, self.wavelength_nm, self.cycles, self.ramp_cycles, self.cep
        )


@dataclass(frozen=True)
class AtomConfig:
    """
    A preset target, or `custom` with its ionization potential.

    `soft_core` fixes the soft-core parameter instead of tuning it.
    """

    label: AtomName = "H"
    ionization_potential: float | None = None
    soft_core: float | None = None

    def __post_init__(self) -> None:
        _require(
            self.label != "custom" or self.ionization_potential is not None,
            "a custom atom needs ionization_potential",
        )
        _require(
            self.ionization_potential is None or self.ionization_potential > 0,
            "ionization potential must be positive",
        )
        _require(self.soft_core is None or self.soft_core > 0, "soft_core must be positive")

    @property
    def target_ionization_potential(self) -> float:
        if self.ionization_potential is not None:
            return self.ionization_potential
        return IONIZATION_POTENTIALS[AtomLabel(self.label)]

    def to_model(self, grid: GridSpec) -> AtomModel:
        label = AtomLabel(self.label)
        if self.soft_core is not None:
            return AtomModel(self.soft_core, self.target_ionization_potential, label)
        return atom_for(label, grid, self.ionization_potential)


@dataclass(frozen=True)
class ThzConfig:
    """
    The THz field.

    `static` holds `amplitude_kv_cm` constant over the probe. `quasi-static`
    holds the value of the THz pulse at the probe centre; `full-wave` uses the
    whole pulse.
    """

    amplitude_kv_cm: float = 0.0
    frequency_thz: float = 1.3
    offset_fs: float = 0.0
    mode: ThzMode = "static"

    def __post_init__(self) -> None:
        _require(math.isfinite(self.amplitude_kv_cm), "THz amplitude must be finite")
        _require(self.frequency_thz > 0, "THz frequency must be positive")

    def to_pulse(self) -> ThzPulse:
        return ThzPulse.from_lab_units(self.amplitude_kv_cm, self.frequency_thz, self.offset_fs)


@dataclass(frozen=True)
class GridConfig:
    dx: float | None = None
    dt: float | None = None
    half_width: float | None = None
    absorber_width_fraction: float | None = None
    mask_exponent: float | None = None

    def __post_init__(self) -> None:
        for name in ("dx", "dt", "half_width", "mask_exponent"):
            value = getattr(self, name)
            _require(value is None or value > 0, f"{name} must be positive")
        _require(
            self.absorber_width_fraction is None or 0 < self.absorber_width_fraction < 0.5,
            "absorber_width_fraction must lie in (0, 0.5)",
        )

    def to_grid(self, probe: ProbePulse) -> GridSpec:
        if self.half_width is None:
            return GridSpec.for_probe(probe, self.dx, self.dt)
        return GridSpec.fitted(self.half_width, self.dx or settings.grid_dx, self.dt or settings.grid_dt)

    def to_absorber(self) -> AbsorberSpec:
        return AbsorberSpec(
            self.absorber_width_fraction or settings.absorber_width_fraction,
            self.mask_exponent or settings.absorber_mask_exponent,
        )


@dataclass(frozen=True)
class OutputConfig:
    directory: str | None = None
    svg: bool = False


@dataclass(frozen=True)
class DelayGridConfig:
    start_fs: float
    stop_fs: float
    count: int

    def __post_init__(self) -> None:
        _require(self.count >= 1, "count must be at least 1")
        _require(self.count == 1 or self.stop_fs > self.start_fs, "stop_fs must follow start_fs")


@dataclass(frozen=True)
class RunConfig:
    probe: ProbeConfig = field(default_factory=ProbeConfig)
    atom: AtomConfig = field(default_factory=AtomConfig)
    thz: ThzConfig = field(default_factory=ThzConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    delays: DelayGridConfig | None = None
    parallelism: int | None = None
    order: int | None = None
    coefficient: float = field(default_factory=lambda: settings.cutoff_coefficient)
    window: Literal["flat-top", "full-pulse"] = "flat-top"
    synthetic_order: int = 5

    def __post_init__(self) -> None:
        _require(self.parallelism is None or self.parallelism >= 1, "parallelism must be at least 1")
        _require(self.order is None or (self.order > 0 and self.order % 2 == 0), "order must be a positive even integer")
        _require(self.coefficient != 0, "coefficient must be non-zero")
        _require(self.synthetic_order >= 1, "synthetic_order must be at least 1")

    def build_setup(self) -> SimulationSetup:
        """
        The `SimulationSetup` this configuration describes.
        """
        probe = self.probe.to_pulse()
        grid = self.grid.to_grid(probe)
        thz_pulse = self.thz.to_pulse()
        thz = None
        static = None
        if self.thz.mode == "full-wave":
            thz = thz_pulse
        elif self.thz.mode == "quasi-static":
            static = float(thz_field_at(thz_pulse, 0.0))
        else:
            static = float(kv_per_cm_to_field(self.thz.amplitude_kv_cm))

        return SimulationSetup(
            probe=probe,
            atom=self.atom.to_model(grid),
            grid=grid,
            absorber=self.grid.to_absorber(),
            thz=thz,
            static_thz=static,
            window=WindowKind(self.window),
            order=self.order,
        )


@dataclass(frozen=True)
class ScanConfig:
    """
    A sweep of one variable of `base`.

    `ET` values are static THz fields in kV/cm, `intensity` in W/cm²,
    `wavelength` in nm, `cycles` total probe cycles and `atom` preset labels.
    """

    base: RunConfig
    variable: SweepVariable
    values: list[float | str]
    order: int | None = None
    label: str | None = None

    def __post_init__(self) -> None:
        _require(bool(self.values), "a sweep needs at least one value")
        if self.variable == "atom":
            _require(all(isinstance(v, str) for v in self.values), "atom sweeps take labels")
            _require(
                all(v in {label.value for label in IONIZATION_POTENTIALS} for v in self.values),
                "atom sweeps take preset labels (H, He, Ne, Ar)",
            )
        else:
            _require(all(not isinstance(v, str) for v in self.values), f"{self.variable} sweeps take numbers")
        if self.variable == "cycles":
            _require(all(float(v).is_integer() for v in self.values), "cycle counts must be integers")
        _require(self.order is None or (self.order > 0 and self.order % 2 == 0), "order must be a positive even integer")

    def point_config(self, value: float | str) -> RunConfig:
        """
        The base configuration with the swept variable set to `value`.
        """
        base = replace(self.base, order=self.order if self.order is not None else self.base.order)
        if self.variable == "ET":
            return replace(base, thz=replace(base.thz, amplitude_kv_cm=float(value), mode="static"))
        if self.variable == "intensity":
            return replace(base, probe=replace(base.probe, intensity_w_cm2=float(value)))
        if self.variable == "wavelength":
            return replace(base, probe=replace(base.probe, wavelength_nm=float(value)))
        if self.variable == "cycles":
            return replace(base, probe=replace(base.probe, cycles=int(float(value))))
        return replace(base, atom=AtomConfig(label=cast(AtomName, value)))

    @property
    def display_label(self) -> str:
        return self.label or f"{self.variable}-scan"


@dataclass(frozen=True)
class CollapseConfig:
    scans: list[ScanConfig]
    gamma_min: float = 0.15
    gamma_max: float = 0.55
    grid_points: int = 41

    def __post_init__(self) -> None:
        _require(len(self.scans) >= 2, "a collapse needs at least two scans")
        _require(0 <= self.gamma_min < self.gamma_max, "gamma_min must be below gamma_max")
        _require(self.grid_points >= 2, "grid_points must be at least 2")


def load_config(path: str | Path, structure: type[C]) -> C:
    """
    Reads the JSON file at `path` and molds it into `structure`.

    Raises:
        ConfigError: If the file cannot be read, is not JSON or fails validation.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    return apply_structure(structure, raw)


def config_hash(config: Any) -> str:
    """
    First 12 hex digits of the SHA-256 of the canonical JSON of `config`.
    """
    canonical = json.dumps(to_builtins(config), sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def resolve_output_dir(cli_value: str | None, config: RunConfig | None = None) -> Path:
    """
    `--out` wins over the config's `output.directory`, which wins over the
    `ODDEVEN_OUTPUT_DIR` setting.
    """
    if cli_value:
        return Path(cli_value)
    if config is not None and config.output.directory:
        return Path(config.output.directory)
    return Path(settings.output_dir)
