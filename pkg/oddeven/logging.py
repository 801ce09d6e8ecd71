from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from typing import Any, ClassVar, cast

from oddeven.conf import monkay
from oddeven.protocols.logging import LoggerProtocol

LEVELS: tuple[str, ...] = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class LoggerProxy:
    """
    The package-wide `logger`.

    Solver modules log from import-time globals and from scan workers, so the
    backend is bound lazily: the first call configures it from the settings.
    """

    def __init__(self) -> None:
        self._target: LoggerProtocol | None = None
        self._lock = threading.RLock()

    def bind_logger(self, target: LoggerProtocol | None) -> None:
        with self._lock:
            self._target = target

    def __getattr__(self, name: str) -> Any:
        with self._lock:
            if self._target is None:
                enable_logging(force=True)
            return getattr(self._target, name)


logger: LoggerProtocol = cast(LoggerProtocol, LoggerProxy())


class LoggingConfig(ABC):
    """
    A logging backend: `configure()` installs it, `get_logger()` hands out
    the object bound to `logger`.
    """

    __logging_levels__: ClassVar[tuple[str, ...]] = LEVELS

    def __init__(self, level: str = "INFO", **options: Any) -> None:
        if level.upper() not in self.__logging_levels__:
            raise ValueError(
                f"'{level}' is not a valid logging level. Available levels: '{', '.join(self.__logging_levels__)}'."
            )
        self.level = level.upper()
        self.options = options

    @abstractmethod
    def configure(self) -> None: ...

    @abstractmethod
    def get_logger(self) -> Any: ...


def setup_logging(logging_config: LoggingConfig | None = None) -> None:
    """
    Installs `logging_config`, a `RichLoggingConfig` when None, and binds
    its logger.

    Raises:
        ValueError: If `logging_config` is not a `LoggingConfig`.
    """
    from oddeven.core.logging import RichLoggingConfig

    if logging_config is None:
        logging_config = RichLoggingConfig()
    elif not isinstance(logging_config, LoggingConfig):
        raise ValueError("`logging_config` must be an instance of LoggingConfig.")

    logging_config.configure()
    logger.bind_logger(logging_config.get_logger())


def enable_logging(force: bool = False) -> None:
    """
    Configures logging from the settings unless that already happened in
    this process, or always with `force`. Process workers of a scan start
    with a fresh flag.
    """
    settings = monkay.settings
    if settings.is_logging_setup and not force:
        return
    setup_logging(settings.logging_config)
    settings.is_logging_setup = True
