"""Neutral robot targets and toolpaths for bandsaw cuts.

Target frame convention: local X is the cut travel direction, local Z is
the cut-plane normal, and Y = Z x X. Approach/retract clearances run along
+Y, which lies in the cut plane, so every emitted target sits on its plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import WorkflowError
from ..transforms import norm, quat_from_frame, vec3, quat4
from ..units import OVERCUT_MARGIN, RETRACT_CLEARANCE
from .cuts import CutPlacement, ValidationResult
from .primitives import PlanarRect

TOOLPATH_SCHEMA = 1


class MotionKind(str, Enum):
    APPROACH = "approach"
    CUT = "cut"
    RETRACT = "retract"


@dataclass
class RobotTarget:
    position: np.ndarray
    orientation: np.ndarray       # unit quaternion, scalar first
    kind: MotionKind

    def __post_init__(self):
        self.position = vec3(self.position)
        self.orientation = quat4(self.orientation)
        self.kind = MotionKind(self.kind)

    def to_dict(self) -> dict:
        return {"pos": [float(c) for c in self.position],
                "quat": [float(c) for c in self.orientation],
                "kind": self.kind.value}


@dataclass
class Toolpath:
    targets: list[RobotTarget]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.targets) < 2:
            raise ValueError("toolpath needs at least approach and retract")
        if self.targets[0].kind is not MotionKind.APPROACH:
            raise ValueError("toolpath must start with an approach target")
        if self.targets[-1].kind is not MotionKind.RETRACT:
            raise ValueError("toolpath must end with a retract target")
        for a, b in zip(self.targets, self.targets[1:]):
            if norm(a.position - b.position) < 1e-12:
                raise ValueError("consecutive toolpath targets coincide")

    def to_document(self) -> dict:
        return {"schema": TOOLPATH_SCHEMA,
                "targets": [t.to_dict() for t in self.targets],
                "metadata": dict(self.metadata)}


def _cut_frame_quat(travel: np.ndarray, in_plane: np.ndarray,
                    normal: np.ndarray) -> np.ndarray:
    return quat_from_frame(travel, in_plane, normal)


def halving_toolpath(surface: PlanarRect,
                     clearance: float = RETRACT_CLEARANCE,
                     metadata: dict | None = None) -> Toolpath:
    """Through-cut along the halving surface.

    Four targets: approach above the entry edge, cut at entry, cut at exit,
    retract above the exit edge — symmetric, so feeding the surface in the
    opposite direction reverses the target order but keeps the same points.
    """
    x = surface.axis_u
    y = surface.axis_v
    quat = _cut_frame_quat(x, y, surface.normal)
    entry = surface.center - surface.half_u * x
    exit_ = surface.center + surface.half_u * x
    lift = clearance * y
    targets = [
        RobotTarget(entry + lift, quat, MotionKind.APPROACH),
        RobotTarget(entry, quat, MotionKind.CUT),
        RobotTarget(exit_, quat, MotionKind.CUT),
        RobotTarget(exit_ + lift, quat, MotionKind.RETRACT),
    ]
    return Toolpath(targets=targets, metadata=metadata or {})


def cut_toolpath(placement: CutPlacement, validation: ValidationResult,
                 overcut: float = OVERCUT_MARGIN,
                 clearance: float = RETRACT_CLEARANCE,
                 metadata: dict | None = None) -> Toolpath:
    """Board cuts, one approach/cut/retract triple per plane.

    Planes are cut from the outermost (deepest off the sawn face) inward.
    Entry and exit overshoot the log ends by ``overcut``; the retract slides
    ``clearance`` along +Y within the plane.
    """
    if not validation.passed:
        raise WorkflowError("cut placement has not passed validation")
    x = placement.axis
    y = placement.lateral
    quat = _cut_frame_quat(x, y, placement.depth_dir)
    targets: list[RobotTarget] = []
    order = sorted(range(len(placement.offsets)),
                   key=lambda i: placement.offsets[i], reverse=True)
    for i in order:
        rect = placement.rects[i]
        entry = rect.center - (rect.half_u + overcut) * x
        exit_ = rect.center + (rect.half_u + overcut) * x
        targets.append(RobotTarget(entry, quat, MotionKind.APPROACH))
        targets.append(RobotTarget(exit_, quat, MotionKind.CUT))
        targets.append(RobotTarget(exit_ + clearance * y, quat, MotionKind.RETRACT))
    return Toolpath(targets=targets, metadata=metadata or {})
