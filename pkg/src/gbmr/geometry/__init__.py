from .primitives import (
    Circle3D,
    CylinderModel,
    HalfLogModel,
    MountBox,
    PlanarRect,
)
from .fitting import circumcircle, fit_cylinder, define_half_log
from .cuts import (
    BoardSpec,
    CutPlacement,
    ValidationResult,
    chord_width,
    halving_surface,
    place_cut,
    point_to_half_log_distance,
    validate_cut,
)
from .toolpath import RobotTarget, Toolpath, halving_toolpath, cut_toolpath

__all__ = [
    "Circle3D",
    "CylinderModel",
    "HalfLogModel",
    "MountBox",
    "PlanarRect",
    "circumcircle",
    "fit_cylinder",
    "define_half_log",
    "BoardSpec",
    "CutPlacement",
    "ValidationResult",
    "chord_width",
    "halving_surface",
    "place_cut",
    "point_to_half_log_distance",
    "validate_cut",
    "RobotTarget",
    "Toolpath",
    "halving_toolpath",
    "cut_toolpath",
]
