import sys

from sayer import Sayer

from oddeven.__version__ import get_version
from oddeven.cli import COMMANDS

help_text = """**oddeven**: even-odd harmonic generation under a terahertz field.

Ground states, harmonic spectra, parameter scans, universality collapse,
classical return trajectories and THz waveform sampling from the command line.
"""

app = Sayer(
    name="oddeven",
    help=help_text,
    add_version_option=True,
    version=get_version(),
)

for cmd in COMMANDS:
    app.add_command(cmd)


def run() -> None:
    """Entry point for the oddeven CLI application."""
    sys.exit(app())
