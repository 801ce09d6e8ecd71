from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from click.testing import CliRunner, Result

from oddeven.core.client import app as default_app


@dataclass(frozen=True)
class OddEvenTestResult:
    exit_code: int
    output: str
    stderr: str
    exception: BaseException | None

    @classmethod
    def from_click(cls, result: Result) -> OddEvenTestResult:
        return cls(
            exit_code=result.exit_code,
            output=result.output,
            stderr=getattr(result, "stderr", ""),
            exception=result.exception,
        )


class OddEvenTestClient:
    """
    Runs oddeven commands in-process.

    Output from both consoles lands in `output`; `exit_code` follows the
    command line contract (0, 1 for numerical failures, 2 for bad input).
    """

    def __init__(self, app: Any = None) -> None:
        self.app = app or default_app
        self.runner = CliRunner()

    def invoke(
        self,
        args: Sequence[str],
        env: Mapping[str, str] | None = None,
        **kwargs: Any,
    ) -> OddEvenTestResult:
        result = self.runner.invoke(
            self.app.cli,
            list(args),
            env=dict(env) if env else None,
            color=False,
            standalone_mode=True,
            **kwargs,
        )
        return OddEvenTestResult.from_click(result)
