"""Runtime tunables, overridable through the FENCEFORGE_CONFIG env var.

The env var, when set, must point at a JSON file whose keys are a subset
of the Config fields. Unknown keys are rejected so a typo cannot silently
leave a tolerance at its default.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    # Geometric tolerances, relative to scene diameter.
    tol_rel: float = 1e-9
    join_rel: float = 1e-9
    # Angular tolerance (radians) for tangent-continuity tests.
    angle_tol: float = 1e-7
    # Grid oracle: pitch = diameter / pitch_divisor unless given explicitly,
    # window padding beyond the obstacle bbox in units of (d0 + 2R), cap on cells.
    pitch_divisor: int = 512
    cell_budget: float = 16e6
    # Simulation: dt = r_min / (dt_divisor * v); pure-pursuit lookahead in r_min.
    dt_divisor: float = 50.0
    lookahead_factor: float = 2.0
    # Steady-state cross-track tolerance, relative to r_min.
    track_tol_rel: float = 1e-2
    # Security witness continuity allowance in units of v*dt (see verify_secure).
    witness_speed_factor: float = 3.0
    # Serialization: significant digits for JSON floats, decimals for SVG.
    json_digits: int = 12
    svg_decimals: int = 6


def load_config() -> Config:
    """Build the active Config, applying FENCEFORGE_CONFIG overrides if set."""
    path = os.environ.get("FENCEFORGE_CONFIG")
    if not path:
        return Config()
    with open(path, "r", encoding="utf-8") as fh:
        overrides = json.load(fh)
    if not isinstance(overrides, dict):
        raise ValueError("config override file must hold a JSON object")
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    return Config(**overrides)


def fmt_float(x: float, digits: int | None = None) -> float:
    """Round to the configured significant digits for stable JSON output."""
    if digits is None:
        digits = load_config().json_digits
    if x == 0.0:
        return 0.0
    return float(f"{x:.{digits}g}")
