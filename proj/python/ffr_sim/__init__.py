"""Fire-fighting robot maze simulator (Python bindings to the C++ core)."""

from ._core import (
    DriveState,
    Event,
    MotorParams,
    Outcome,
    Pose,
    SimConfig,
    SimError,
    SimResult,
    VehicleParams,
    advance_pose,
    body_velocity,
    campaign,
    check_config,
    config_from_text,
    default_config,
    default_config_text,
    drive_normal_force,
    friction_torque_load,
    load_config,
    run,
    run_config,
    step_drive,
    summary_table,
    world_rates,
)

__all__ = [name for name in dir() if not name.startswith("_")]
