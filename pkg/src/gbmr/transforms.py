"""Small vector / quaternion / rigid-transform toolkit.

Quaternions are stored scalar-first (w, x, y, z) everywhere, matching the
wire and file formats. scipy handles the matrix conversions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import NonRigidTransformError

QUAT_NORM_TOL = 1e-6

IDENTITY_QUAT = (1.0, 0.0, 0.0, 0.0)


def vec3(v) -> np.ndarray:
    """Coerce to a finite float (3,) vector."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    return arr


def norm(v: np.ndarray) -> float:
    return math.sqrt(float(v @ v))


def normalized(v: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    n = norm(v)
    if n < eps:
        raise ValueError("cannot normalize near-zero vector")
    return v / n


def quat4(q) -> np.ndarray:
    """Coerce to a finite float (4,) quaternion, scalar first."""
    arr = np.asarray(q, dtype=float)
    if arr.shape != (4,):
        raise ValueError(f"expected quaternion, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("quaternion components must be finite")
    return arr


def is_unit_quat(q: np.ndarray, tol: float = QUAT_NORM_TOL) -> bool:
    return abs(math.sqrt(float(q @ q)) - 1.0) <= tol


def quat_from_matrix(m: np.ndarray) -> np.ndarray:
    return Rotation.from_matrix(m).as_quat(scalar_first=True)


def matrix_from_quat(q) -> np.ndarray:
    return Rotation.from_quat(quat4(q), scalar_first=True).as_matrix()


def quat_multiply(a, b) -> np.ndarray:
    ra = Rotation.from_quat(quat4(a), scalar_first=True)
    rb = Rotation.from_quat(quat4(b), scalar_first=True)
    return (ra * rb).as_quat(scalar_first=True)


def rotate(q, v) -> np.ndarray:
    return Rotation.from_quat(quat4(q), scalar_first=True).apply(vec3(v))


def quat_from_frame(x_axis, y_axis, z_axis) -> np.ndarray:
    """Quaternion mapping local basis vectors onto the given world axes."""
    m = np.column_stack([vec3(x_axis), vec3(y_axis), vec3(z_axis)])
    return quat_from_matrix(m)


def plane_basis(normal) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal in-plane basis (u, v) for a unit normal."""
    n = vec3(normal)
    helper = np.array([0.0, 0.0, 1.0]) if abs(n[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    u = normalized(np.cross(helper, n))
    v = np.cross(n, u)
    return u, v


@dataclass
class RigidTransform:
    """Rotation-plus-translation world alignment (an anchor pose)."""

    position: np.ndarray
    quaternion: np.ndarray = field(default_factory=lambda: np.array(IDENTITY_QUAT))

    def __post_init__(self):
        self.position = vec3(self.position)
        self.quaternion = quat4(self.quaternion)

    def require_rigid(self) -> "RigidTransform":
        if not is_unit_quat(self.quaternion):
            raise NonRigidTransformError(
                f"quaternion norm {norm(self.quaternion):.9f} is not 1"
            )
        return self

    def apply(self, points) -> np.ndarray:
        """Transform an (N,3) array or a single 3-vector into world frame."""
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        rot = Rotation.from_quat(self.quaternion, scalar_first=True)
        out = rot.apply(pts) + self.position
        return out[0] if single else out

    def apply_quat(self, q) -> np.ndarray:
        return quat_multiply(self.quaternion, q)

    def to_dict(self) -> dict:
        return {"pos": [float(c) for c in self.position],
                "quat": [float(c) for c in self.quaternion]}

    @classmethod
    def from_dict(cls, data: dict) -> "RigidTransform":
        return cls(position=data["pos"], quaternion=data["quat"])

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(position=np.zeros(3))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RigidTransform):
            return NotImplemented
        return (np.array_equal(self.position, other.position)
                and np.array_equal(self.quaternion, other.quaternion))
