from sayer import command

from oddeven.__version__ import get_version
from oddeven.cli.common import ConfigOption, OutOption, load_run_config, output_directory, reporting_errors
from oddeven.config import config_hash
from oddeven.tdse import ground_state, save_wavefunction
from oddeven.utils.output import write_json
from oddeven.utils.ui import success


@command
def groundstate(config: ConfigOption, out: OutOption) -> None:
    """
    Prepare the ground state of the configured atom.

    Writes groundstate.npz (the wavefunction checkpoint) and groundstate.json
    (energy, soft-core parameter and grid).
    """
    with reporting_errors():
        run_config = load_run_config(config)
        probe = run_config.probe.to_pulse()
        grid = run_config.grid.to_grid(probe)
        atom = run_config.atom.to_model(grid)
        state, energy = ground_state(grid, atom)

        directory = output_directory(out, run_config)
        save_wavefunction(directory / "groundstate.npz", state, grid, energy=energy, atom=atom)
        write_json(
            directory / "groundstate.json",
            {
                "version": get_version(),
                "config": config_hash(run_config),
                "atom": atom.label.value,
                "energy_au": energy,
                "target_ionization_potential_au": atom.ionization_potential,
                "soft_core_a": atom.soft_core_parameter,
                "grid": grid.descriptor(),
            },
        )

    success(f"{atom.label.value} ground state: E = {energy:.6f} a.u. (a = {atom.soft_core_parameter:.6f})")
