"""Figure renderers for cooling-trajectory and equilibrium-curve CSV files."""

from .common import (
    EQUILIBRIUM_COLUMNS,
    TRAJECTORY_COLUMNS,
    SchemaError,
    load_equilibrium,
    load_sidecar,
    load_trajectory,
)

__all__ = [
    "EQUILIBRIUM_COLUMNS",
    "TRAJECTORY_COLUMNS",
    "SchemaError",
    "load_equilibrium",
    "load_sidecar",
    "load_trajectory",
]

__version__ = "0.1.0"
