"""Geometric primitives for log localization and cut placement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..transforms import RigidTransform, norm, plane_basis, vec3
from ..units import MOUNT_CROSS_SECTION

UNIT_TOL = 1e-9


def _require_unit(v: np.ndarray, name: str, tol: float = UNIT_TOL) -> np.ndarray:
    if abs(norm(v) - 1.0) > tol:
        raise ValueError(f"{name} must be a unit vector (norm {norm(v):.12f})")
    return v


@dataclass
class Circle3D:
    """Circle in space: center, unit plane normal, positive radius."""

    center: np.ndarray
    normal: np.ndarray
    radius: float

    def __post_init__(self):
        self.center = vec3(self.center)
        self.normal = _require_unit(vec3(self.normal), "circle normal")
        if not self.radius > 0.0:
            raise ValueError(f"radius must be > 0, got {self.radius}")

    def to_dict(self) -> dict:
        return {"center": [float(c) for c in self.center],
                "normal": [float(c) for c in self.normal],
                "radius": float(self.radius)}


@dataclass
class CylinderModel:
    """Frustum between two end circles re-projected perpendicular to the axis.

    ``c0``/``c1`` keep their fitted centers and radii but their planes are
    forced perpendicular to the center-to-center axis, so tessellation always
    yields a valid surface-of-revolution segment.
    """

    c0: Circle3D
    c1: Circle3D
    axis: np.ndarray
    length: float
    tessellation: int = 48

    def __post_init__(self):
        self.axis = _require_unit(vec3(self.axis), "cylinder axis")
        if not self.length > 0.0:
            raise ValueError("cylinder length must be > 0")
        if self.tessellation < 3:
            raise ValueError("tessellation must be >= 3")

    @property
    def max_radius(self) -> float:
        return max(self.c0.radius, self.c1.radius)

    def ring_points(self, end: int) -> np.ndarray:
        """Tessellated rim points of one end circle, in its re-projected plane."""
        circle = self.c0 if end == 0 else self.c1
        u, v = plane_basis(self.axis)
        angles = np.linspace(0.0, 2.0 * math.pi, self.tessellation, endpoint=False)
        return (circle.center
                + circle.radius * (np.outer(np.cos(angles), u)
                                   + np.outer(np.sin(angles), v)))

    def to_dict(self) -> dict:
        return {"c0": self.c0.to_dict(), "c1": self.c1.to_dict(),
                "axis": [float(c) for c in self.axis],
                "length": float(self.length),
                "tessellation": int(self.tessellation)}


@dataclass
class HalfLogModel:
    """Half log: flat sawn base plane, axis in that plane, radius and length."""

    base_point: np.ndarray
    base_normal: np.ndarray
    axis: np.ndarray
    radius: float
    length: float

    def __post_init__(self):
        self.base_point = vec3(self.base_point)
        self.base_normal = _require_unit(vec3(self.base_normal), "base normal")
        self.axis = _require_unit(vec3(self.axis), "half-log axis")
        if abs(float(self.axis @ self.base_normal)) > 1e-6:
            raise ValueError("axis must lie in the base plane")
        if not (self.radius > 0.0 and self.length > 0.0):
            raise ValueError("radius and length must be > 0")
        self._lateral = np.cross(self.base_normal, self.axis)

    def oriented_toward(self, point) -> "HalfLogModel":
        """Copy with the base normal pointing toward ``point``'s side."""
        side = float((vec3(point) - self.base_point) @ self.base_normal)
        if side >= 0.0:
            return self
        return HalfLogModel(self.base_point, -self.base_normal, self.axis,
                            self.radius, self.length)

    @property
    def lateral(self) -> np.ndarray:
        """In-base-plane direction perpendicular to the axis."""
        return self._lateral

    def to_dict(self) -> dict:
        return {"base_point": [float(c) for c in self.base_point],
                "base_normal": [float(c) for c in self.base_normal],
                "axis": [float(c) for c in self.axis],
                "radius": float(self.radius),
                "length": float(self.length)}


@dataclass
class PlanarRect:
    """Bounded rectangle: center, two in-plane unit axes, half extents."""

    center: np.ndarray
    axis_u: np.ndarray
    axis_v: np.ndarray
    half_u: float
    half_v: float

    def __post_init__(self):
        self.center = vec3(self.center)
        self.axis_u = _require_unit(vec3(self.axis_u), "rect axis_u")
        self.axis_v = _require_unit(vec3(self.axis_v), "rect axis_v")
        if abs(float(self.axis_u @ self.axis_v)) > 1e-9:
            raise ValueError("rect axes must be perpendicular")
        if self.half_u < 0.0 or self.half_v < 0.0:
            raise ValueError("rect half extents must be >= 0")
        self._normal = np.cross(self.axis_u, self.axis_v)

    @property
    def normal(self) -> np.ndarray:
        return self._normal

    def corners(self) -> np.ndarray:
        du = self.axis_u * self.half_u
        dv = self.axis_v * self.half_v
        return np.stack([self.center + du + dv, self.center + du - dv,
                         self.center - du - dv, self.center - du + dv])

    def to_dict(self) -> dict:
        return {"center": [float(c) for c in self.center],
                "axis_u": [float(c) for c in self.axis_u],
                "axis_v": [float(c) for c in self.axis_v],
                "half_u": float(self.half_u),
                "half_v": float(self.half_v)}


@dataclass
class MountBox:
    """Oriented log-mount box: square cross-section, extruded along local X.

    The pose locates the box center; local X is the extrusion (depth) axis.
    Treated as immutable after construction — the derived frame is cached.
    """

    pose: RigidTransform
    depth: float
    cross_section: float = MOUNT_CROSS_SECTION

    def __post_init__(self):
        if not (self.depth > 0.0 and self.cross_section > 0.0):
            raise ValueError("mount box extents must be > 0")
        self.pose.require_rigid()
        from ..transforms import matrix_from_quat

        self._axes = np.ascontiguousarray(matrix_from_quat(self.pose.quaternion).T)
        self._half_extents = np.array([self.depth / 2.0,
                                       self.cross_section / 2.0,
                                       self.cross_section / 2.0])
        signs = np.array([[sx, sy, sz] for sx in (-1, 1)
                          for sy in (-1, 1) for sz in (-1, 1)], dtype=float)
        self._corners = self.pose.position + (signs * self._half_extents) @ self._axes

    @property
    def half_extents(self) -> np.ndarray:
        return self._half_extents

    @property
    def axes(self) -> np.ndarray:
        """Rows are the box's local axes in world frame."""
        return self._axes

    def corners(self) -> np.ndarray:
        return self._corners

    @classmethod
    def from_dict(cls, data: dict) -> "MountBox":
        return cls(pose=RigidTransform.from_dict(data["pose"]),
                   depth=float(data["depth"]),
                   cross_section=float(data.get("cross_section", MOUNT_CROSS_SECTION)))

    def to_dict(self) -> dict:
        return {"pose": self.pose.to_dict(), "depth": float(self.depth),
                "cross_section": float(self.cross_section)}


