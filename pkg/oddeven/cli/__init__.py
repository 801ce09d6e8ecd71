from oddeven.cli.collapse import collapse
from oddeven.cli.groundstate import groundstate
from oddeven.cli.orbits import orbits
from oddeven.cli.reconstruct import reconstruct_waveform
from oddeven.cli.scan import scan
from oddeven.cli.spectrum import spectrum

COMMANDS = (groundstate, spectrum, scan, collapse, orbits, reconstruct_waveform)
