from __future__ import annotations

from collections.abc import Mapping
from typing import Any


class OddEvenError(Exception):
    """
    Base class of every error raised by the toolkit.

    The optional `detail` mapping carries machine-readable context (step index,
    residual, offending config path, ...) so the command line can render it
    without parsing the message.
    """

    def __init__(self, message: str, *, detail: Mapping[str, Any] | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.detail: dict[str, Any] = dict(detail or {})

    def __str__(self) -> str:
        if not self.detail:
            return self.message
        extra = ", ".join(f"{key}={value}" for key, value in self.detail.items())
        return f"{self.message} ({extra})"

    def __reduce__(self) -> tuple[Any, ...]:
        # Keyword-only context lives in the instance dict, not in `args`.
        return _restore_error, (type(self), self.args, self.__dict__)


def _restore_error(cls: type[OddEvenError], args: tuple[Any, ...], state: dict[str, Any]) -> OddEvenError:
    """
    Rebuilds a pickled error without calling its `__init__`, so errors cross
    process boundaries whatever their constructor signature.
    """
    error = cls.__new__(cls, *args)
    error.__dict__.update(state)
    return error


class DomainError(OddEvenError, ValueError):
    """
    An input lies outside the domain of an operation (negative intensity,
    odd monitored order, energy above the classical cutoff, ...).
    """


class ConvergenceError(OddEvenError):
    """
    An iterative solver ran out of iterations.
    """

    def __init__(self, message: str, *, residual: float, iterations: int) -> None:
        super().__init__(message, detail={"residual": residual, "iterations": iterations})
        self.residual = residual
        self.iterations = iterations


class NumericalInstabilityError(OddEvenError):
    """
    Time propagation produced NaN/Inf values or gained norm.
    """

    def __init__(self, message: str, *, step: int, time: float) -> None:
        super().__init__(message, detail={"step": step, "time": time})
        self.step = step
        self.time = time


class SolverError(OddEvenError):
    """
    A root finder could not bracket or locate a solution.
    """


class ConfigError(OddEvenError):
    """
    A run configuration failed schema validation.
    """

    def __init__(self, message: str, *, path: str | None = None) -> None:
        super().__init__(message, detail={"path": path} if path else None)
        self.path = path


class CheckpointError(OddEvenError):
    """
    A wavefunction checkpoint is missing, malformed or of another format version.
    """


class CollapseError(OddEvenError):
    """
    Scan curves do not overlap enough in the asymmetry parameter to be compared.
    """
