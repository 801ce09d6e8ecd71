from typing import Any

from rich.markup import escape
from rich.table import Table

from oddeven.utils.console import console, error_console


def error(message: str) -> None:
    """
    Prints an error message on stderr, in red with a '✖' prefix.
    """
    error_console.print(f"[bold red]✖ {escape(message)}[/]", highlight=False)


def success(message: str) -> None:
    console.print(f"[bold green]✔ {escape(message)}[/]", highlight=False)


def warning(message: str) -> None:
    """
    Prints a warning in yellow with a '⚠' prefix.
    """
    console.print(f"[bold yellow]⚠ {escape(message)}[/]", highlight=False)


def info(message: str) -> None:
    console.print(f"[bold blue]ℹ {escape(message)}[/]", highlight=False)


def table(rows: list[dict[str, Any]], title: str = "Output") -> None:
    """
    Prints `rows` as a table whose columns are the keys of the first row.
    """
    if not rows:
        console.print("[italic]No data to display.[/]")
        return

    headers: list[str] = list(rows[0].keys())
    t = Table(title=title)
    for header in headers:
        t.add_column(str(header))
    for row in rows:
        t.add_row(*(_cell(row.get(header)) for header in headers))
    console.print(t)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return "" if value is None else str(value)
