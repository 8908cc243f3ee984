"""Unit handling: meters internally, inches only at file boundaries."""

from __future__ import annotations

METERS_PER_INCH = 0.0254

# Default tolerances, in meters. Kept as literals so comparisons in tests
# and catalogs are bit-identical to what the engine uses.
GREEN_TOLERANCE = 0.003175       # 0.125 in
YELLOW_TOLERANCE = 0.0127        # 0.5 in
TUBE_TOLERANCE = 0.0127          # 0.5 in
LAYER_TOLERANCE = 0.00635        # 0.25 in
MIN_BOARD_WIDTH = 0.1270         # 5 in
MIN_BOARD_THICKNESS = 0.01905    # 0.75 in
MOUNT_CROSS_SECTION = 0.1016     # 4 in
MOUNT_CLEARANCE = 0.0254         # 1 in
OVERCUT_MARGIN = 0.050
RETRACT_CLEARANCE = 0.150


def inches(value: float) -> float:
    """Convert inches to meters."""
    return value * METERS_PER_INCH


def convert_length(value: float, unit: str) -> float:
    """Convert a file-declared length to meters. Accepts "m" or "in"."""
    if unit == "m":
        return float(value)
    if unit == "in":
        return inches(float(value))
    raise ValueError(f"unknown unit {unit!r}")
