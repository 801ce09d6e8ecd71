from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from oddeven.exceptions import CheckpointError
from oddeven.logging import logger
from oddeven.tdse.atoms import AtomModel
from oddeven.tdse.grid import GridSpec
from oddeven.tdse.wavefunction import Wavefunction

CHECKPOINT_FORMAT_VERSION = 1
CHECKPOINT_KIND = "oddeven.wavefunction"
_REQUIRED_KEYS = ("format_version", "kind", "values", "grid", "time", "energy", "atom")


def save_wavefunction(
    path: str | Path,
    state: Wavefunction,
    grid: GridSpec,
    *,
    energy: float | None = None,
    atom: AtomModel | None = None,
) -> Path:
    """
    Writes `state` and its grid to a compressed `.npz` checkpoint.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        np.savez_compressed(
            handle,
            format_version=np.array(CHECKPOINT_FORMAT_VERSION),
            kind=np.array(CHECKPOINT_KIND),
            values=np.asarray(state.values, dtype=np.complex128),
            grid=np.array(json.dumps(grid.descriptor(), sort_keys=True)),
            time=np.array(state.time),
            energy=np.array(np.nan if energy is None else energy),
            atom=np.array(json.dumps(atom.descriptor() if atom else None, sort_keys=True)),
        )
    logger.debug(f"wrote checkpoint {path}")
    return path


def load_wavefunction(path: str | Path) -> tuple[Wavefunction, GridSpec, dict[str, Any]]:
    """
    Reads a checkpoint written by `save_wavefunction`.

    Returns the state, its grid and the remaining header fields (`energy`,
    `atom`).

    Raises:
        CheckpointError: If the file is missing, malformed or of another format version.
    """
    path = Path(path)
    try:
        with np.load(path, allow_pickle=False) as archive:
            missing = [key for key in _REQUIRED_KEYS if key not in archive.files]
            if missing:
                raise CheckpointError(f"checkpoint {path} lacks {', '.join(missing)}")
            if str(archive["kind"]) != CHECKPOINT_KIND:
                raise CheckpointError(f"{path} is not a wavefunction checkpoint")
            version = int(archive["format_version"])
            if version != CHECKPOINT_FORMAT_VERSION:
                raise CheckpointError(
                    f"checkpoint format version {version} is not supported",
                    detail={"expected": CHECKPOINT_FORMAT_VERSION, "found": version},
                )
            values = archive["values"].astype(np.complex128)
            grid_fields = json.loads(str(archive["grid"]))
            time = float(archive["time"])
            energy = float(archive["energy"])
            atom = json.loads(str(archive["atom"]))
    except (OSError, ValueError, KeyError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc

    grid = GridSpec(
        x_min=grid_fields["x_min"],
        x_max=grid_fields["x_max"],
        num_points=grid_fields["num_points"],
        dt=grid_fields["dt"],
    )
    if values.shape != (grid.num_points,):
        raise CheckpointError(f"checkpoint holds {values.size} amplitudes for a {grid.num_points}-point grid")
    return Wavefunction(values, time), grid, {"energy": None if np.isnan(energy) else energy, "atom": atom}
