import logging
import logging.config
from typing import Any

from rich.console import Console
from rich.logging import RichHandler

from oddeven.logging import LoggingConfig


def stderr_rich_handler(**kwargs: Any) -> RichHandler:
    """
    Handler factory for `dictConfig`: a `RichHandler` writing to stderr.
    """
    return RichHandler(console=Console(stderr=True), **kwargs)


class RichLoggingConfig(LoggingConfig):
    """
    `LoggingConfig` backed by the standard `logging` module, rendering records
    on stderr through `rich.logging.RichHandler`.

    Stdout is reserved for command results, so log lines never interleave
    with tables or success messages.
    """

    def __init__(self, config: dict[str, Any] | None = None, **kwargs: Any) -> None:
        super().__init__(**kwargs)
        self.config: dict[str, Any] = config or self.default_config()

    def default_config(self) -> dict[str, Any]:
        return {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "default": {"format": "%(message)s", "datefmt": "[%X]"},
            },
            "handlers": {
                "rich": {
                    "()": "oddeven.core.logging.stderr_rich_handler",
                    "formatter": "default",
                    "rich_tracebacks": True,
                    "show_path": False,
                },
            },
            "loggers": {
                "oddeven": {
                    "level": self.level,
                    "handlers": ["rich"],
                    "propagate": False,
                },
            },
        }

    def configure(self) -> None:
        logging.config.dictConfig(self.config)

    def get_logger(self) -> Any:
        """
        Returns the `oddeven` logger.
        """
        return logging.getLogger("oddeven")
