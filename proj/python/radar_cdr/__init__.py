"""FMCW radar simulation and calibrated noise-floor randomization."""

from ._radar_cdr import (
    RadarCdrError,
    apply_cdr,
    apply_random_dr,
    balanced_accuracy,
    calibrate_noise_floor,
    derived_params,
    simulate_maps,
    static_energy_ratio,
    wasserstein1,
)

__all__ = [
    "RadarCdrError",
    "apply_cdr",
    "apply_random_dr",
    "balanced_accuracy",
    "calibrate_noise_floor",
    "derived_params",
    "simulate_maps",
    "static_energy_ratio",
    "wasserstein1",
]
