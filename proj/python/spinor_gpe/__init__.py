"""Spectral solver for rotating spin-orbit-coupled spin-2 condensates.

States are complex arrays of shape (5, N, N) in 2D or (5, N, N, N) in 3D,
ordered l = 2, 1, 0, -1, -2 with x the fastest axis.
"""

from ._core import (
    ConfigError,
    Grid,
    IoError,
    ModelParams,
    NumericalError,
    angular_momentum,
    check_config,
    diagnostics,
    energy,
    evolve,
    initial_state,
    magnetization,
    mass,
    mode_propagator,
    mode_q_matrix,
    read_snapshot,
    run_config,
    set_worker_count,
    spin_rotation,
    worker_count,
    write_snapshot,
)

__all__ = [
    "ConfigError",
    "Grid",
    "IoError",
    "ModelParams",
    "NumericalError",
    "angular_momentum",
    "check_config",
    "diagnostics",
    "energy",
    "evolve",
    "initial_state",
    "magnetization",
    "mass",
    "mode_propagator",
    "mode_q_matrix",
    "read_snapshot",
    "run_config",
    "set_worker_count",
    "spin_rotation",
    "worker_count",
    "write_snapshot",
]
