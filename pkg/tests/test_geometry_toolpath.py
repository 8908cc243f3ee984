from __future__ import annotations

import math

import numpy as np
import pytest

from gbmr.errors import WorkflowError
from gbmr.geometry import (
    BoardSpec,
    chord_width,
    circumcircle,
    cut_toolpath,
    define_half_log,
    fit_cylinder,
    halving_surface,
    halving_toolpath,
    place_cut,
    validate_cut,
)
from gbmr.geometry.toolpath import MotionKind
from gbmr.transforms import matrix_from_quat


def x_cylinder(radius=0.15, length=2.0, reverse=False):
    def rim(x):
        return [[x, -radius, 0.0], [x, 0.0, radius], [x, radius, 0.0]]

    ends = (rim(length), rim(0.0)) if reverse else (rim(0.0), rim(length))
    return fit_cylinder(circumcircle(*ends[0]), circumcircle(*ends[1]))


def frame_axes(quat):
    m = matrix_from_quat(quat)
    return m[:, 0], m[:, 1], m[:, 2]


class TestHalvingToolpath:
    def test_entry_exit_positions(self):
        surf = halving_surface(x_cylinder())
        tp = halving_toolpath(surf)
        xs = sorted(float(t.position[0]) for t in tp.targets)
        assert xs[0] == pytest.approx(-0.05, abs=1e-12)
        assert xs[-1] == pytest.approx(2.05, abs=1e-12)
        cut_positions = [t.position for t in tp.targets
                         if t.kind is MotionKind.CUT]
        assert len(cut_positions) == 2
        assert cut_positions[0][0] == pytest.approx(-0.05, abs=1e-12)
        assert cut_positions[1][0] == pytest.approx(2.05, abs=1e-12)

    def test_all_targets_on_mid_plane(self):
        surf = halving_surface(x_cylinder())
        tp = halving_toolpath(surf)
        for t in tp.targets:
            off = float(surf.normal @ (t.position - surf.center))
            assert abs(off) < 1e-9

    def test_orientations_all_equal_for_planar_cut(self):
        tp = halving_toolpath(halving_surface(x_cylinder()))
        first = tp.targets[0].orientation
        for t in tp.targets[1:]:
            assert np.array_equal(t.orientation, first)

    def test_reversal_reverses_order_keeps_points(self):
        forward = halving_toolpath(halving_surface(x_cylinder()))
        backward = halving_toolpath(halving_surface(x_cylinder(reverse=True)))
        fwd = [t.position for t in forward.targets]
        bwd = [t.position for t in backward.targets]
        for a, b in zip(fwd, reversed(bwd)):
            assert np.allclose(a, b, atol=1e-12)

    def test_frame_convention(self):
        surf = halving_surface(x_cylinder())
        tp = halving_toolpath(surf)
        x, y, z = frame_axes(tp.targets[0].orientation)
        assert np.allclose(x, surf.axis_u, atol=1e-12)   # travel
        assert np.allclose(z, surf.normal, atol=1e-12)   # cut-plane normal
        assert np.allclose(y, np.cross(z, x), atol=1e-12)

    def test_structure(self):
        tp = halving_toolpath(halving_surface(x_cylinder()))
        assert tp.targets[0].kind is MotionKind.APPROACH
        assert tp.targets[-1].kind is MotionKind.RETRACT
        assert len(tp.targets) >= 3


def validated_placement(board_count=3):
    hl = define_half_log([0, -0.2, 0], [0, 0.2, 0], [2, 0, 0])
    hl = hl.oriented_toward([1.0, 0.0, 0.1])
    placement = place_cut(hl, [1.0, 0.0, 0.01], BoardSpec(board_count=board_count))
    validation = validate_cut(placement, hl, mounts=[])
    return placement, validation


class TestCutToolpath:
    def test_three_boards_nine_targets(self):
        placement, validation = validated_placement(3)
        tp = cut_toolpath(placement, validation)
        assert len(tp.targets) == 9
        kinds = [t.kind for t in tp.targets]
        assert kinds == [MotionKind.APPROACH, MotionKind.CUT,
                         MotionKind.RETRACT] * 3

    def test_normals_equal_across_triples(self):
        placement, validation = validated_placement(3)
        tp = cut_toolpath(placement, validation)
        first = tp.targets[0].orientation
        for t in tp.targets:
            assert np.array_equal(t.orientation, first)

    def test_targets_on_their_planes(self):
        placement, validation = validated_placement(3)
        tp = cut_toolpath(placement, validation)
        offsets_desc = sorted(placement.offsets, reverse=True)
        for i, h in enumerate(offsets_desc):
            plane_point = placement.origin + h * placement.depth_dir
            for t in tp.targets[3 * i:3 * i + 3]:
                off = float(placement.depth_dir @ (t.position - plane_point))
                assert abs(off) < 1e-9

    def test_outermost_plane_first(self):
        placement, validation = validated_placement(3)
        tp = cut_toolpath(placement, validation)
        depths = [float(placement.depth_dir @ (t.position - placement.origin))
                  for t in tp.targets[::3]]
        assert depths == sorted(depths, reverse=True)

    def test_overcut_margins(self):
        placement, validation = validated_placement(1)
        tp = cut_toolpath(placement, validation)
        us = [float(placement.axis @ (t.position - placement.origin))
              for t in tp.targets]
        assert min(us) == pytest.approx(-0.05, abs=1e-12)
        assert max(us) == pytest.approx(2.05, abs=1e-12)

    def test_unvalidated_placement_rejected(self):
        hl = define_half_log([0, -0.2, 0], [0, 0.2, 0], [2, 0, 0])
        hl = hl.oriented_toward([1.0, 0.0, 0.1])
        # too deep: chord below the minimum width
        deep = math.sqrt(0.2 ** 2 - 0.05 ** 2) + 1e-4
        placement = place_cut(hl, [1.0, 0.0, deep], BoardSpec(board_count=1))
        validation = validate_cut(placement, hl, mounts=[])
        assert not validation.passed
        with pytest.raises(WorkflowError, match="validation"):
            cut_toolpath(placement, validation)


class TestToolpathDocument:
    def test_document_schema(self):
        tp = halving_toolpath(halving_surface(x_cylinder()),
                              metadata={"workflow": "log_halving",
                                        "source_log": "cylinder-1"})
        doc = tp.to_document()
        assert doc["schema"] == 1
        assert doc["metadata"]["workflow"] == "log_halving"
        for entry in doc["targets"]:
            assert set(entry) == {"pos", "quat", "kind"}
            assert len(entry["pos"]) == 3
            assert len(entry["quat"]) == 4
            assert entry["kind"] in ("approach", "cut", "retract")

    def test_orthonormal_frame_invariant(self):
        placement, validation = validated_placement(2)
        for tp in (cut_toolpath(placement, validation),
                   halving_toolpath(halving_surface(x_cylinder()))):
            for t in tp.targets:
                x, y, z = frame_axes(t.orientation)
                assert abs(float(x @ z)) < 1e-9
                assert np.allclose(y, np.cross(z, x), atol=1e-9)
                assert abs(np.linalg.norm(t.orientation) - 1.0) < 1e-9
