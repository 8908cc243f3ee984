from __future__ import annotations

import math

import numpy as np
import pytest

from gbmr.errors import DegenerateGeometryError
from gbmr.geometry import circumcircle, define_half_log, fit_cylinder
from gbmr.transforms import (
    RigidTransform,
    matrix_from_quat,
    plane_basis,
    quat_from_matrix,
)


def random_rotation(rng) -> np.ndarray:
    q = rng.normal(size=4)
    return quat_from_matrix(matrix_from_quat(q / np.linalg.norm(q)))


def sample_circle_points(center, normal, radius, angles):
    u, v = plane_basis(normal / np.linalg.norm(normal))
    return [center + radius * (math.cos(a) * u + math.sin(a) * v)
            for a in angles]


class TestCircumcircle:
    def test_right_triangle(self):
        c = circumcircle([0, 0, 0], [1, 0, 0], [0, 1, 0])
        assert np.allclose(c.center, [0.5, 0.5, 0.0], atol=1e-12)
        assert c.radius == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
        assert np.allclose(np.abs(c.normal), [0, 0, 1], atol=1e-12)

    def test_normal_right_handed(self):
        c = circumcircle([0, 0, 0], [1, 0, 0], [0, 1, 0])
        assert np.allclose(c.normal, [0, 0, 1], atol=1e-12)
        flipped = circumcircle([0, 0, 0], [0, 1, 0], [1, 0, 0])
        assert np.allclose(flipped.normal, [0, 0, -1], atol=1e-12)

    def test_generate_then_fit_round_trip(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            center = rng.uniform(-2, 2, size=3)
            normal = rng.normal(size=3)
            normal /= np.linalg.norm(normal)
            radius = float(rng.uniform(0.05, 1.5))
            angles = np.sort(rng.uniform(0, 2 * math.pi, size=3))
            while np.min(np.diff(angles)) < 0.2:
                angles = np.sort(rng.uniform(0, 2 * math.pi, size=3))
            p1, p2, p3 = sample_circle_points(center, normal, radius, angles)
            fit = circumcircle(p1, p2, p3)
            assert np.linalg.norm(fit.center - center) < 1e-9 * max(1.0, radius)
            assert abs(fit.radius - radius) / radius < 1e-9
            assert abs(abs(float(fit.normal @ normal)) - 1.0) < 1e-9

    def test_collinear_rejected(self):
        with pytest.raises(DegenerateGeometryError, match="re-place"):
            circumcircle([0, 0, 0], [1, 0, 0], [2, 0, 0])

    def test_duplicate_point_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            circumcircle([0, 0, 0], [0, 0, 0], [1, 1, 0])


class TestFitCylinder:
    def test_aligned_circles(self):
        a = circumcircle([0.15, 0, 0], [0, 0.15, 0], [-0.15, 0, 0])
        b = circumcircle([0.15, 0, 2], [0, 0.15, 2], [-0.15, 0, 2])
        cyl = fit_cylinder(a, b)
        assert np.allclose(cyl.axis, [0, 0, 1], atol=1e-12)
        assert cyl.length == pytest.approx(2.0, abs=1e-12)
        assert cyl.c0.radius == pytest.approx(0.15, abs=1e-12)
        assert cyl.c1.radius == pytest.approx(0.15, abs=1e-12)

    def test_frustum_keeps_radii(self):
        from gbmr.geometry import Circle3D

        a = Circle3D(center=[0, 0, 0], normal=[0, 0, 1], radius=0.15)
        b = Circle3D(center=[0, 0, 2], normal=[0, 0, 1], radius=0.12)
        cyl = fit_cylinder(a, b)
        assert cyl.c0.radius == 0.15
        assert cyl.c1.radius == 0.12

    def test_tilted_end_circles_reprojected(self):
        from gbmr.geometry import Circle3D

        tilt = math.radians(10)
        tilted = np.array([math.sin(tilt), 0.0, math.cos(tilt)])
        a = Circle3D(center=[0, 0, 0], normal=tilted, radius=0.15)
        b = Circle3D(center=[0, 0, 2], normal=tilted, radius=0.15)
        cyl = fit_cylinder(a, b)
        # ring planes must be perpendicular to the axis after re-projection
        for end in (0, 1):
            ring = cyl.ring_points(end)
            axial = (ring - (cyl.c0.center if end == 0 else cyl.c1.center)) @ cyl.axis
            assert np.max(np.abs(axial)) < 1e-12

    def test_coincident_centers_rejected(self):
        from gbmr.geometry import Circle3D

        a = Circle3D(center=[0, 0, 0], normal=[0, 0, 1], radius=0.15)
        b = Circle3D(center=[0, 0, 0], normal=[0, 1, 0], radius=0.12)
        with pytest.raises(DegenerateGeometryError, match="coincide"):
            fit_cylinder(a, b)


class TestDefineHalfLog:
    def test_axis_aligned(self):
        hl = define_half_log([0, -0.15, 0], [0, 0.15, 0], [2, 0, 0])
        assert np.allclose(hl.base_point, [0, 0, 0], atol=1e-12)
        assert hl.radius == pytest.approx(0.15, abs=1e-15)
        assert np.allclose(hl.axis, [1, 0, 0], atol=1e-12)
        assert hl.length == pytest.approx(2.0, abs=1e-12)

    def test_diametral_component_removed(self):
        hl = define_half_log([0, -0.15, 0], [0, 0.15, 0], [2, 0.03, 0])
        assert np.allclose(hl.axis, [1, 0, 0], atol=1e-12)
        assert hl.length == pytest.approx(2.0, abs=1e-12)

    def test_zero_length_rejected(self):
        with pytest.raises(DegenerateGeometryError, match="re-place"):
            define_half_log([0, -0.15, 0], [0, 0.15, 0], [0, 0, 0])

    def test_axis_lies_in_base_plane(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            d1 = rng.uniform(-1, 1, size=3)
            d2 = d1 + rng.uniform(0.1, 0.5) * _unit(rng)
            len_pt = d1 + rng.uniform(0.5, 3.0) * _unit(rng)
            try:
                hl = define_half_log(d1, d2, len_pt)
            except DegenerateGeometryError:
                continue
            assert abs(float(hl.axis @ hl.base_normal)) < 1e-9


def _unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


class TestRigidInvariance:
    def test_circumcircle_equivariant(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            pts = rng.uniform(-1, 1, size=(3, 3))
            try:
                base = circumcircle(*pts)
            except DegenerateGeometryError:
                continue
            xf = RigidTransform(position=rng.uniform(-2, 2, size=3),
                                quaternion=random_rotation(rng))
            moved = circumcircle(*(xf.apply(p) for p in pts))
            assert np.linalg.norm(moved.center - xf.apply(base.center)) < 1e-9
            rot = matrix_from_quat(xf.quaternion)
            assert np.linalg.norm(moved.normal - rot @ base.normal) < 1e-9
            assert abs(moved.radius - base.radius) < 1e-9

    def test_cylinder_equivariant(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            a_pts = rng.uniform(-1, 1, size=(3, 3))
            b_pts = a_pts + np.array([0, 0, 2.0])
            try:
                cyl = fit_cylinder(circumcircle(*a_pts), circumcircle(*b_pts))
            except DegenerateGeometryError:
                continue
            xf = RigidTransform(position=rng.uniform(-2, 2, size=3),
                                quaternion=random_rotation(rng))
            moved = fit_cylinder(circumcircle(*(xf.apply(p) for p in a_pts)),
                                 circumcircle(*(xf.apply(p) for p in b_pts)))
            rot = matrix_from_quat(xf.quaternion)
            assert np.linalg.norm(moved.axis - rot @ cyl.axis) < 1e-9
            assert abs(moved.length - cyl.length) < 1e-9
            assert np.linalg.norm(moved.c0.center - xf.apply(cyl.c0.center)) < 1e-9
