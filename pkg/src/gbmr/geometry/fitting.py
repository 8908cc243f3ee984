"""Fits from digitized rim points: circles, cylinders, half logs."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DegenerateGeometryError
from ..transforms import norm, normalized, vec3
from .primitives import Circle3D, CylinderModel, HalfLogModel

# A triangle thinner than this (in m^2) cannot anchor a reliable circle.
MIN_TRIANGLE_AREA = 1e-9

MIN_SEPARATION = 1e-9


def circumcircle(p1, p2, p3) -> Circle3D:
    """Unique circle through three points.

    The normal follows the right-hand rule on (p2-p1, p3-p1), so the point
    order fixes the circle's orientation. Raises when the triangle is too
    thin to determine a plane; the caller should ask for a re-placed point.
    """
    p1, p2, p3 = vec3(p1), vec3(p2), vec3(p3)
    u = p2 - p1
    v = p3 - p1
    n = np.cross(u, v)
    area = 0.5 * norm(n)
    if area < MIN_TRIANGLE_AREA:
        raise DegenerateGeometryError(
            f"points are collinear (triangle area {area:.3e} m^2); re-place a point"
        )
    nn = float(n @ n)
    center = p1 + (float(u @ u) * np.cross(v, n) + float(v @ v) * np.cross(n, u)) / (2.0 * nn)
    radius = norm(p1 - center)
    return Circle3D(center=center, normal=n / math.sqrt(nn), radius=radius)


def fit_cylinder(end_a: Circle3D, end_b: Circle3D, tessellation: int = 48) -> CylinderModel:
    """Frustum spanning two fitted end circles.

    The axis runs from ``end_a``'s center to ``end_b``'s; both end circles
    are re-projected onto planes perpendicular to that axis (radii kept), so
    slightly tilted fits still produce a clean surface of revolution.
    """
    span = end_b.center - end_a.center
    length = norm(span)
    if length < MIN_SEPARATION:
        raise DegenerateGeometryError("end-circle centers coincide; re-place points")
    axis = span / length
    c0 = Circle3D(center=end_a.center, normal=axis, radius=end_a.radius)
    c1 = Circle3D(center=end_b.center, normal=axis, radius=end_b.radius)
    return CylinderModel(c0=c0, c1=c1, axis=axis, length=length,
                         tessellation=tessellation)


def define_half_log(d1, d2, len_pt) -> HalfLogModel:
    """Half log from two diameter points on one end rim and one far-end point.

    Radius and end center come from the diameter pair; the axis is the
    direction to the far point with its diametral component removed, and the
    length is that point's projection onto the axis. The base (sawn) plane
    passes through the diameter points and contains the axis.
    """
    d1, d2, len_pt = vec3(d1), vec3(d2), vec3(len_pt)
    chord = d2 - d1
    diameter = norm(chord)
    if diameter < MIN_SEPARATION:
        raise DegenerateGeometryError("diameter points coincide; re-place a point")
    diam_dir = chord / diameter
    center = (d1 + d2) / 2.0
    reach = len_pt - center
    axial = reach - float(reach @ diam_dir) * diam_dir
    length = norm(axial)
    if length < MIN_SEPARATION:
        raise DegenerateGeometryError(
            "length point projects onto the end plane; re-place it"
        )
    axis = axial / length
    base_normal = normalized(np.cross(diam_dir, axis))
    return HalfLogModel(base_point=center, base_normal=base_normal,
                        axis=axis, radius=diameter / 2.0, length=length)
