from typing import Annotated, Any

from sayer import Option, command

from oddeven.__version__ import get_version
from oddeven.cli.common import ConfigOption, OutOption, load_run_config, output_directory, reporting_errors
from oddeven.orbits import (
    cutoff_trajectory,
    disorder_threshold,
    extrema,
    harmonic_coefficients,
    harmonic_return_energy,
    reversal_points,
    solve_return,
)
from oddeven.utils.output import write_json
from oddeven.utils.ui import info, success, table


@command
def orbits(
    cutoff: Annotated[bool, Option(False, help="Report the cutoff trajectory and its coefficient C.")],
    energy: Annotated[float | None, Option(None, help="Return energy in Up; reports both branches.")],
    harmonic: Annotated[int | None, Option(None, help="Harmonic order; the probe and atom come from --config.")],
    reversals: Annotated[int, Option(3, help="Highest index k of the reported reversal points.")],
    config: ConfigOption,
    out: OutOption,
) -> None:
    """
    Classical return trajectories and the coefficient of the even-to-odd law.

    Without --energy or --harmonic the cutoff trajectory is reported. The
    reversal points, extrema and disorder threshold always use the cutoff C.
    """
    with reporting_errors():
        run_config = load_run_config(config) if config is not None or harmonic is not None else None
        reference = cutoff_trajectory()
        coefficient = reference.coefficient.value
        trajectories = []
        report: dict[str, Any] = {"version": get_version()}

        if cutoff or (energy is None and harmonic is None):
            trajectories.append(reference)
        if energy is not None:
            trajectories.extend(solve_return(energy))
            report["energy_up"] = energy
        if run_config is not None and harmonic is not None:
            probe = run_config.probe.to_pulse()
            ionization_potential = run_config.atom.target_ionization_potential
            report["harmonic"] = {
                "order": harmonic,
                "energy_up": harmonic_return_energy(
                    harmonic, probe.peak_amplitude, probe.carrier_frequency, ionization_potential
                ),
            }
            trajectories.extend(
                harmonic_coefficients(
                    harmonic, probe.peak_amplitude, probe.carrier_frequency, ionization_potential
                ).values()
            )

        points = extrema(coefficient, reversals)
        report.update(
            {
                "C": coefficient,
                "trajectories": [trajectory.to_record() for trajectory in trajectories],
                "reversal_points": reversal_points(coefficient, reversals),
                "pure_odd": points.pure_odd,
                "pure_even": points.pure_even,
                "disorder_threshold": disorder_threshold(coefficient),
            }
        )
        directory = output_directory(out, run_config)
        path = write_json(directory / "orbits.json", report)

    table([trajectory.to_record() for trajectory in trajectories], title="Trajectories")
    info("reversal points: " + ", ".join(f"{g:.3f}" for g in report["reversal_points"]))
    success(f"|C| = {abs(coefficient):.4f}, report written to {path}")
