import sys
from typing import Any

from rich.console import Console

from oddeven.conf import monkay


class ConsoleProxy:
    """
    A `rich.console.Console` rebuilt on every attribute access.

    The console is bound to whatever `sys.stdout` (or `sys.stderr`) is at call
    time, so output is captured correctly when a test runner swaps the streams.
    """

    def __init__(self, stderr: bool = False) -> None:
        self._stderr = stderr

    def __getattr__(self, name: str) -> Any:
        console = Console(
            file=sys.stderr if self._stderr else sys.stdout,
            force_terminal=monkay.settings.force_terminal,
            color_system=monkay.settings.color_system,
            markup=True,
            highlight=True,
            emoji=True,
        )
        return getattr(console, name)


console = ConsoleProxy()
error_console = ConsoleProxy(stderr=True)
