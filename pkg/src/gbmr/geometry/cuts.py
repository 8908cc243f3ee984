"""Halving surfaces, board-cut placement, and cut validation.

The half-log solid is the intersection of the fitted cylinder, the sawn-face
half space, and the length slab — a convex body, so a rectangle lies inside
it exactly when its four corners do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..calibration.notation import NotationState, fail_notation, pass_notation
from ..errors import DegenerateGeometryError, SnapDistanceError
from ..transforms import normalized, vec3
from ..units import (
    MIN_BOARD_THICKNESS,
    MIN_BOARD_WIDTH,
    MOUNT_CLEARANCE,
    OVERCUT_MARGIN,
)
from .distance import rect_box_clearance_ok
from .primitives import CylinderModel, HalfLogModel, MountBox, PlanarRect

WORLD_UP = np.array([0.0, 0.0, 1.0])
VERTICAL_GUARD_DEG = 5.0
SNAP_TOLERANCE = 0.050
CONTAINMENT_EPS = 1e-9


@dataclass(frozen=True)
class BoardSpec:
    """Structural minimums for one sawn board and how many to cut."""

    min_width: float = MIN_BOARD_WIDTH
    min_thickness: float = MIN_BOARD_THICKNESS
    board_count: int = 1

    def __post_init__(self):
        if not (self.min_width > 0.0 and self.min_thickness > 0.0):
            raise ValueError("board minimums must be > 0")
        if self.board_count < 1:
            raise ValueError("board_count must be >= 1")

    def to_dict(self) -> dict:
        return {"min_width": self.min_width, "min_thickness": self.min_thickness,
                "board_count": self.board_count}


def chord_width(radius: float, depth: float) -> float:
    """Full chord width of a circle of ``radius`` cut at ``depth`` off-center."""
    if depth < 0.0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth >= radius:
        raise DegenerateGeometryError(
            f"cut depth {depth} m reaches the rim of a {radius} m radius log"
        )
    return 2.0 * math.sqrt(radius * radius - depth * depth)


def halving_surface(cyl: CylinderModel, world_up=WORLD_UP,
                    overcut: float = OVERCUT_MARGIN) -> PlanarRect:
    """Vertical cut rectangle through the middle of the cylinder.

    The plane contains the axis and the world up direction; the rectangle
    covers the full log plus ``overcut`` margin at each end and side. A log
    standing within 5 degrees of vertical has no defined blade orientation
    and is rejected.
    """
    up = normalized(vec3(world_up))
    cos_tilt = abs(float(cyl.axis @ up))
    if cos_tilt > math.cos(math.radians(VERTICAL_GUARD_DEG)):
        raise DegenerateGeometryError(
            "cylinder axis within 5 degrees of vertical; re-mount the log "
            "or supply an explicit cut normal"
        )
    normal = normalized(np.cross(cyl.axis, up))
    center = (cyl.c0.center + cyl.c1.center) / 2.0
    in_plane = np.cross(normal, cyl.axis)
    return PlanarRect(center=center, axis_u=cyl.axis, axis_v=in_plane,
                      half_u=cyl.length / 2.0 + overcut,
                      half_v=cyl.max_radius + overcut)


def point_to_half_log_distance(point, half_log: HalfLogModel) -> float:
    """Distance from a point to the solid half log (0 inside).

    The solid is a Cartesian product of the axial interval and the half-disk
    cross-section, so the distance splits into independent components.
    """
    p = vec3(point)
    rel = p - half_log.base_point
    u = float(rel @ half_log.axis)
    v = float(rel @ half_log.base_normal)      # depth above the sawn face
    w = float(rel @ half_log.lateral)

    du = max(-u, u - half_log.length, 0.0)

    r = half_log.radius
    if v >= 0.0:
        rho = math.hypot(v, w)
        dc = max(rho - r, 0.0)
    elif abs(w) <= r:
        dc = -v
    else:
        dc = math.hypot(v, abs(w) - r)

    return math.hypot(du, dc)


@dataclass
class CutPlacement:
    """A stack of parallel board-cut planes over a half log.

    ``offsets`` are plane depths measured from the sawn base plane along
    ``depth_dir`` (ascending); each plane carries one rectangle surface.
    """

    anchor: np.ndarray
    origin: np.ndarray            # half-log end center on the base plane
    axis: np.ndarray              # cut travel direction (log axis)
    depth_dir: np.ndarray         # base-plane normal, toward the boards
    offsets: tuple[float, ...]
    rects: list[PlanarRect]
    spec: BoardSpec

    def __post_init__(self):
        self.anchor = vec3(self.anchor)
        self.origin = vec3(self.origin)
        self.axis = vec3(self.axis)
        self.depth_dir = vec3(self.depth_dir)
        if len(self.offsets) != len(self.rects):
            raise ValueError("one rectangle per cut plane required")
        for rect in self.rects:
            if abs(abs(float(rect.normal @ self.depth_dir)) - 1.0) > 1e-9:
                raise ValueError("cut planes must be mutually parallel")
        gaps = np.diff(self.offsets)
        if np.any(gaps < self.spec.min_thickness - 1e-12):
            raise ValueError("cut planes closer than the board thickness")

    @property
    def lateral(self) -> np.ndarray:
        return np.cross(self.depth_dir, self.axis)

    def to_dict(self) -> dict:
        return {"anchor": [float(c) for c in self.anchor],
                "offsets": [float(o) for o in self.offsets],
                "rects": [r.to_dict() for r in self.rects],
                "spec": self.spec.to_dict()}


@dataclass
class BoardCheck:
    """Pass/fail booleans for a single cut plane."""

    inside_boundary: bool
    clear_of_mounts: bool
    width_ok: bool

    @property
    def ok(self) -> bool:
        return self.inside_boundary and self.clear_of_mounts and self.width_ok

    def to_dict(self) -> dict:
        return {"inside_boundary": self.inside_boundary,
                "clear_of_mounts": self.clear_of_mounts,
                "width_ok": self.width_ok}


@dataclass
class ValidationResult:
    status: str                      # "pass" | "fail"
    reasons: list[BoardCheck]
    notation: NotationState

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"status": self.status,
                "reasons": [r.to_dict() for r in self.reasons],
                "notation": self.notation.to_dict()}


def place_cut(half_log: HalfLogModel, anchor, spec: BoardSpec,
              snap_tolerance: float = SNAP_TOLERANCE) -> CutPlacement:
    """Board-cut stack anchored at a pinched point on the log profile.

    The anchor picks the dome side of the sawn face and the first plane's
    depth; the remaining planes advance away from the base plane at the
    board thickness. An anchor farther than ``snap_tolerance`` from the
    half-log body is rejected so a stray pinch cannot place a cut.
    """
    anchor = vec3(anchor)
    oriented = half_log.oriented_toward(anchor)
    gap = point_to_half_log_distance(anchor, oriented)
    if gap > snap_tolerance:
        raise SnapDistanceError(
            f"anchor is {gap * 1000:.1f} mm from the half log "
            f"(snap tolerance {snap_tolerance * 1000:.0f} mm)"
        )
    h0 = max(float((anchor - oriented.base_point) @ oriented.base_normal), 0.0)
    offsets = tuple(h0 + i * spec.min_thickness for i in range(spec.board_count))

    lateral = oriented.lateral
    mid = oriented.base_point + (oriented.length / 2.0) * oriented.axis
    rects = []
    for h in offsets:
        if h < oriented.radius:
            half_chord = math.sqrt(oriented.radius ** 2 - h * h)
        else:
            half_chord = 0.0
        rects.append(PlanarRect(center=mid + h * oriented.base_normal,
                                axis_u=oriented.axis, axis_v=lateral,
                                half_u=oriented.length / 2.0,
                                half_v=half_chord))
    return CutPlacement(anchor=anchor, origin=oriented.base_point,
                        axis=oriented.axis, depth_dir=oriented.base_normal,
                        offsets=offsets, rects=rects, spec=spec)


def _corners_inside(corners: np.ndarray, log: HalfLogModel, eps: float) -> bool:
    """All corners inside the solid; sufficient for whole rectangles by convexity."""
    rel = corners - log.base_point
    u = rel @ log.axis
    v = rel @ log.base_normal
    w = rel @ log.lateral
    if np.any(u < -eps) or np.any(u > log.length + eps) or np.any(v < -eps):
        return False
    return bool(np.all(np.hypot(v, w) <= log.radius + eps))


def validate_cut(placement: CutPlacement, half_log: HalfLogModel,
                 mounts: list[MountBox],
                 clearance: float = MOUNT_CLEARANCE) -> ValidationResult:
    """Check a placement against the log boundary, the mounts, and the width gate.

    Passes only when every rectangle lies inside the half-log solid, keeps
    at least ``clearance`` from every mount box, and sits at a depth whose
    chord meets the minimum board width. Always returns a result; failure
    carries a red cross notation for the operator.
    """
    if float(half_log.base_normal @ placement.depth_dir) >= 0.0:
        oriented = half_log
    else:
        oriented = half_log.oriented_toward(
            half_log.base_point - half_log.base_normal
        )
    reasons = []
    for h, rect in zip(placement.offsets, placement.rects):
        inside = _corners_inside(rect.corners(), oriented, CONTAINMENT_EPS)
        clear = all(rect_box_clearance_ok(rect, box, clearance) for box in mounts)
        if 0.0 <= h < oriented.radius:
            width_ok = (2.0 * math.sqrt(oriented.radius ** 2 - h * h)
                        >= placement.spec.min_width)
        else:
            width_ok = False
        reasons.append(BoardCheck(inside_boundary=inside, clear_of_mounts=clear,
                                  width_ok=width_ok))
    if all(r.ok for r in reasons):
        return ValidationResult("pass", reasons, _PASS_NOTATION)
    return ValidationResult("fail", reasons, _FAIL_NOTATION)


_PASS_NOTATION = pass_notation("cut placement valid")
_FAIL_NOTATION = fail_notation("adjust the cut location and retry")
