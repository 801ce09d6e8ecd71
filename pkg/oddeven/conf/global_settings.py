from __future__ import annotations

import builtins
import os
import sys
from types import UnionType
from typing import (
    TYPE_CHECKING,
    Annotated,
    Any,
    ClassVar,
    Literal,
    Union,
    get_args,
    get_origin,
    get_type_hints,
)

from oddeven.__version__ import __version__  # noqa

if TYPE_CHECKING:
    from oddeven.logging import LoggingConfig


def safe_get_type_hints(cls: type) -> dict[str, Any]:
    """
    Returns the resolved type hints of `cls`, falling back to the raw
    annotations when a forward reference cannot be evaluated.
    """
    try:
        return get_type_hints(cls, include_extras=True)
    except Exception:
        hints: dict[str, Any] = {}
        for klass in reversed(cls.__mro__):
            hints.update(getattr(klass, "__annotations__", {}))
        return hints


class BaseSettings:
    """
    Base of all the settings of the toolkit.

    Every annotated attribute can be overridden from the environment. The
    variable name is the attribute name upper-cased and prefixed with
    `__env_prefix__`, so `output_dir` is read from `ODDEVEN_OUTPUT_DIR`.
    """

    __env_prefix__: ClassVar[str] = "ODDEVEN_"
    __type_hints__: ClassVar[dict[str, Any] | None] = None
    __truthy__: ClassVar[set[str]] = {"true", "1", "yes", "on", "y"}

    def __init__(self, **kwargs: Any) -> None:
        cls = self.__class__
        if cls.__dict__.get("__type_hints__") is None:
            cls.__type_hints__ = {
                key: value
                for key, value in safe_get_type_hints(cls).items()
                if not key.startswith("__") and get_origin(value) is not ClassVar
            }

        for key, value in kwargs.items():
            setattr(self, key, value)

        for key, typ in cls.__type_hints__.items():
            if key in kwargs:
                continue
            env_value = os.getenv(f"{self.__env_prefix__}{key.upper()}", None)
            if env_value is not None:
                value = self._cast(env_value, self._extract_base_type(typ))
            else:
                value = getattr(self, key, None)
            setattr(self, key, value)

        self.post_init()

    def post_init(self) -> None:
        """
        Hook called once every value is resolved.
        """
        ...

    def _extract_base_type(self, typ: Any) -> Any:
        if get_origin(typ) is Annotated:
            return get_args(typ)[0]

        if isinstance(typ, str):
            resolved = self._resolve_string_type(typ)
            if resolved:
                return resolved
        return typ

    def _resolve_string_type(self, type_name: str) -> Any:
        # "int | None" style annotations left unresolved.
        base_name = type_name.split("|", 1)[0].split("[", 1)[0].strip()

        module = sys.modules.get(self.__class__.__module__)
        if module and hasattr(module, base_name):
            return getattr(module, base_name)
        if hasattr(builtins, base_name):
            return getattr(builtins, base_name)
        return None

    def _cast(self, value: str, typ: Any) -> Any:
        """
        Casts an environment string to `typ`.

        Raises:
            ValueError: If the value cannot be cast.
        """
        try:
            origin = get_origin(typ)
            if origin is Union or origin is UnionType:
                non_none_types = [t for t in get_args(typ) if t is not type(None)]
                if len(non_none_types) != 1:
                    raise ValueError(f"Cannot cast to ambiguous Union type: {typ}")
                if value.strip().lower() in {"", "none", "null"}:
                    return None
                typ = non_none_types[0]

            if get_origin(typ) is Literal:
                if value not in get_args(typ):
                    raise ValueError(value)
                return value

            if typ is bool:
                return value.lower() in self.__truthy__
            return typ(value)
        except Exception:
            type_name = getattr(typ, "__name__", str(typ))
            raise ValueError(f"Cannot cast value '{value}' to type '{type_name}'") from None

    def dict(self, exclude_none: bool = False, upper: bool = False, exclude: set[str] | None = None) -> dict[str, Any]:
        """
        Dumps all the settings into a python dictionary.
        """
        exclude = exclude or set()
        result: dict[str, Any] = {}
        for key in self.__class__.__type_hints__ or {}:
            if key in exclude:
                continue
            value = getattr(self, key, None)
            if exclude_none and value is None:
                continue
            result[key.upper() if upper else key] = value
        return result


class Settings(BaseSettings):
    """
    Runtime configuration of the toolkit.

    Numerical defaults live here rather than in the modules so a whole study can
    be re-run with, say, a finer grid by pointing `ODDEVEN_SETTINGS_MODULE` at a
    subclass or by exporting a single environment variable.
    """

    debug: bool = False
    """
    Enables debug mode, which also shows tracebacks for failed commands.
    """

    logging_level: str = "INFO"
    """
    Minimum severity of log records. One of "DEBUG", "INFO", "WARNING",
    "ERROR" and "CRITICAL".
    """

    version: str = __version__

    is_logging_setup: bool = False
    """
    Set once `enable_logging()` configured the logging backend.
    """

    force_terminal: bool | None = None
    color_system: Literal["auto", "standard", "256", "truecolor", "windows"] = "auto"

    output_dir: str = "results"
    """
    Directory receiving CSV, JSON, SVG and checkpoint files when neither the
    command line nor the run configuration names one.
    """

    parallelism: int | None = None
    """
    Number of simulations run concurrently by scans. `None` uses every core.
    """

    worker_backend: Literal["process", "thread"] = "process"
    """
    Where per-point work runs. Processes give real parallelism for the
    propagation loop; threads are cheaper to start and are used by the test
    suite.
    """

    grid_dx: float = 0.2
    """
    Grid spacing in atomic units of length.
    """

    grid_dt: float = 0.05
    """
    Real-time step in atomic units. Resolves photon energies up to about 12 a.u.
    (harmonic order ~500 of a 2000 nm driver).
    """

    min_half_width: float = 400.0
    box_margin: float = 100.0
    min_grid_points: int = 1024

    absorber_width_fraction: float = 0.1
    absorber_mask_exponent: float = 0.125

    imaginary_dt_coarse: float = 0.1
    imaginary_dt_fine: float = 0.01
    ground_state_tolerance: float = 1e-10
    """
    Maximum change of the ground-state energy between two consecutive checks.
    """

    ground_state_max_iterations: int = 200_000
    norm_gain_tolerance: float = 1e-6

    zero_padding_factor: int = 4
    harmonic_half_width: float = 0.25
    """
    Half-width, in harmonic orders, of the band integrated around each harmonic.
    """

    min_flat_top_cycles: int = 3
    """
    Shortest flat top, in optical cycles, used on its own as the emission
    window. Shorter flat tops do not separate neighbouring harmonics well
    enough, so the window widens to the whole pulse with a warning.
    """

    cutoff_coefficient: float = 2.558
    convergence_threshold: float = 0.05
    pure_odd_floor: float = 1e-3
    window_sensitivity_limit: float = 0.2

    __logging_config__: ClassVar[Any] = None

    @property
    def logging_config(self) -> LoggingConfig | None:
        """
        The logging configuration applied by `enable_logging()`.

        Defaults to a `RichLoggingConfig` at `logging_level`.
        """
        from oddeven.core.logging import RichLoggingConfig

        if self.__logging_config__ is None:
            self.__logging_config__ = RichLoggingConfig(level=self.logging_level)
        return self.__logging_config__

    @logging_config.setter
    def logging_config(self, config: LoggingConfig) -> None:
        self.__logging_config__ = config
