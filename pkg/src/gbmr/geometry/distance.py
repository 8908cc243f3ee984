"""Exact distances between cut rectangles and oriented mount boxes.

Both shapes are convex, so the minimum distance is attained on boundary
features: it is the minimum over (rect vertex -> solid box), (box vertex ->
rect), and all edge/edge pairs formed by the two shapes — unless a separating
axis test says the shapes intersect, in which case the distance is zero.
"""

from __future__ import annotations

import math

import numpy as np

from .primitives import MountBox, PlanarRect

_EDGE_EPS = 1e-14


def point_box_distance(point: np.ndarray, box: MountBox) -> float:
    """Distance from a point to the solid box (0 inside)."""
    local = box.axes @ (point - box.pose.position)
    excess = np.abs(local) - box.half_extents
    outside = np.maximum(excess, 0.0)
    return math.sqrt(float(outside @ outside))


def point_rect_distance(point: np.ndarray, rect: PlanarRect) -> float:
    d = point - rect.center
    u = min(max(float(d @ rect.axis_u), -rect.half_u), rect.half_u)
    v = min(max(float(d @ rect.axis_v), -rect.half_v), rect.half_v)
    closest = rect.center + u * rect.axis_u + v * rect.axis_v
    diff = point - closest
    return math.sqrt(float(diff @ diff))


def _segment_pairs_distance(p1: np.ndarray, d1: np.ndarray,
                            p2: np.ndarray, d2: np.ndarray) -> float:
    """Min distance over all segment pairs; rows of (p, d) define p..p+d.

    Vectorized form of the classic clamped closest-point computation; the
    (N,M) pair grid is evaluated in one shot.
    """
    r = p1[:, None, :] - p2[None, :, :]                    # (N, M, 3)
    a = np.einsum("ik,ik->i", d1, d1)[:, None]             # (N, 1)
    e = np.einsum("jk,jk->j", d2, d2)[None, :]             # (1, M)
    b = np.einsum("ik,jk->ij", d1, d2)                     # (N, M)
    c = np.einsum("ik,ijk->ij", d1, r)
    f = np.einsum("jk,ijk->ij", d2, r)

    denom = a * e - b * b
    s = np.where(denom > _EDGE_EPS, np.clip((b * f - c * e) / np.where(denom > _EDGE_EPS, denom, 1.0), 0.0, 1.0), 0.0)
    safe_e = np.where(e > _EDGE_EPS, e, 1.0)
    t = (b * s + f) / safe_e
    t_clamped = np.clip(t, 0.0, 1.0)
    # Re-clamp s where t hit a bound.
    safe_a = np.where(a > _EDGE_EPS, a, 1.0)
    s = np.where(t != t_clamped, np.clip((b * t_clamped - c) / safe_a, 0.0, 1.0), s)
    t = t_clamped
    closest1 = p1[:, None, :] + s[..., None] * d1[:, None, :]
    closest2 = p2[None, :, :] + t[..., None] * d2[None, :, :]
    diff = closest1 - closest2
    return math.sqrt(float(np.min(np.einsum("ijk,ijk->ij", diff, diff))))


def _rect_edges(rect: PlanarRect) -> tuple[np.ndarray, np.ndarray]:
    corners = rect.corners()
    starts = corners
    ends = np.roll(corners, -1, axis=0)
    return starts, ends - starts


def _box_edges(box: MountBox) -> tuple[np.ndarray, np.ndarray]:
    c = box.corners()  # sign order (-,-,-) ... (+,+,+) over (x,y,z)
    idx = [(0, 4), (1, 5), (2, 6), (3, 7),   # along x
           (0, 2), (1, 3), (4, 6), (5, 7),   # along y
           (0, 1), (2, 3), (4, 5), (6, 7)]   # along z
    starts = np.stack([c[i] for i, _ in idx])
    ends = np.stack([c[j] for _, j in idx])
    return starts, ends - starts


def rect_box_intersects(rect: PlanarRect, box: MountBox) -> bool:
    """Separating-axis test; the rect is a zero-thickness oriented box."""
    rect_axes = np.stack([rect.axis_u, rect.axis_v, rect.normal])
    rect_ext = np.array([rect.half_u, rect.half_v, 0.0])
    box_axes = box.axes
    box_ext = box.half_extents
    delta = box.pose.position - rect.center

    crosses = np.cross(rect_axes[:, None, :], box_axes[None, :, :]).reshape(9, 3)
    lengths = np.sqrt(np.einsum("ij,ij->i", crosses, crosses))
    good = lengths > 1e-10
    crosses = crosses[good] / lengths[good][:, None]
    axes = np.vstack([rect_axes, box_axes, crosses])

    r_rect = np.abs(axes @ rect_axes.T) @ rect_ext
    r_box = np.abs(axes @ box_axes.T) @ box_ext
    separation = np.abs(axes @ delta) - (r_rect + r_box)
    return not bool(np.any(separation > 1e-15))


def rect_box_distance(rect: PlanarRect, box: MountBox) -> float:
    """Exact minimum distance between a rectangle and a solid oriented box."""
    if rect_box_intersects(rect, box):
        return 0.0
    best = min(point_box_distance(p, box) for p in rect.corners())
    best = min(best, min(point_rect_distance(p, rect) for p in box.corners()))
    rs, rd = _rect_edges(rect)
    bs, bd = _box_edges(box)
    best = min(best, _segment_pairs_distance(rs, rd, bs, bd))
    return best


def rect_box_clearance_ok(rect: PlanarRect, box: MountBox, clearance: float) -> bool:
    """True when the rect keeps at least ``clearance`` from the box.

    Cheap interval bounds on the rect's own frame decide most cases without
    the exact feature enumeration: in that frame the rect is an axis-aligned
    box, so per-axis projection gaps give a valid Euclidean lower bound, and
    the box corners give an upper bound.
    """
    delta = box.pose.position - rect.center
    frame = np.stack([rect.axis_u, rect.axis_v, rect.normal])
    rect_ext = np.array([rect.half_u, rect.half_v, 0.0])
    basis_dots = np.abs(frame @ box.axes.T)

    centers = frame @ delta
    box_radii = basis_dots @ box.half_extents
    gaps = np.maximum(np.abs(centers) - box_radii - rect_ext, 0.0)
    if float(gaps @ gaps) >= clearance * clearance:
        return True

    # Same interval bound seen from the box frame.
    centers_box = box.axes @ delta
    rect_radii = basis_dots.T @ rect_ext
    gaps_box = np.maximum(np.abs(centers_box) - box.half_extents - rect_radii, 0.0)
    if float(gaps_box @ gaps_box) >= clearance * clearance:
        return True

    # Upper bound: nearest box corner to the rect already violates clearance.
    local = (box.corners() - rect.center) @ frame.T
    du = np.maximum(np.abs(local[:, 0]) - rect.half_u, 0.0)
    dv = np.maximum(np.abs(local[:, 1]) - rect.half_v, 0.0)
    corner_sq = du * du + dv * dv + local[:, 2] * local[:, 2]
    if float(np.min(corner_sq)) < clearance * clearance:
        return False

    # Same upper bound from the rect corners.
    local_rc = (rect.corners() - box.pose.position) @ box.axes.T
    excess = np.maximum(np.abs(local_rc) - box.half_extents, 0.0)
    if float(np.min(np.einsum("ij,ij->i", excess, excess))) < clearance * clearance:
        return False

    return rect_box_distance(rect, box) >= clearance
