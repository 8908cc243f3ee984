from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import nearest_board_scan
from gbmr.calibration import (
    BoardQCRecord,
    CalibrationSession,
    CalibrationTarget,
    Rail,
    apply_anchor,
    notation_for_distance,
    qc_board,
)
from gbmr.calibration.notation import NotationColor, NotationGlyph, NotationState
from gbmr.errors import NonRigidTransformError
from gbmr.hand_tracking.joints import Handedness
from gbmr.hand_tracking.pinch import PinchEvent, PinchKind
from gbmr.transforms import RigidTransform, matrix_from_quat, quat_from_matrix

GREEN_TOL = 0.003175
YELLOW_TOL = 0.0127


def moved(point, t=0) -> PinchEvent:
    return PinchEvent(timestamp=t, handedness=Handedness.RIGHT,
                      kind=PinchKind.MOVED, point=np.asarray(point, dtype=float))


def released(point, t=0) -> PinchEvent:
    return PinchEvent(timestamp=t, handedness=Handedness.RIGHT,
                      kind=PinchKind.RELEASED, point=np.asarray(point, dtype=float))


def two_target_session() -> CalibrationSession:
    rail = Rail(point=[0, 0, 0.1], direction=[1, 0, 0])
    targets = [
        CalibrationTarget(target_id="hex-1", sequence=0, goal=[0.2, 0, 0.1],
                          rail=rail),
        CalibrationTarget(target_id="hex-2", sequence=1, goal=[0.5, 0, 0.1],
                          rail=rail),
    ]
    return CalibrationSession(targets)


class TestNotationThresholds:
    def test_exact_green_boundary(self):
        n = notation_for_distance(0.003175)
        assert n.color is NotationColor.GREEN
        assert n.glyph is NotationGlyph.CHECK

    def test_one_nanometer_past_green_is_yellow(self):
        n = notation_for_distance(0.003175 + 1e-9)
        assert n.color is NotationColor.YELLOW
        assert n.glyph is NotationGlyph.CROSS

    def test_yellow_boundary_inclusive(self):
        assert notation_for_distance(0.0127).color is NotationColor.YELLOW
        assert notation_for_distance(math.nextafter(0.0127, 1)).color is NotationColor.RED

    def test_red_far_away(self):
        n = notation_for_distance(0.05)
        assert n.color is NotationColor.RED
        assert n.glyph is NotationGlyph.CROSS

    def test_glyph_pairing_enforced(self):
        with pytest.raises(ValueError):
            NotationState(NotationColor.GREEN, NotationGlyph.CROSS)
        with pytest.raises(ValueError):
            NotationState(NotationColor.RED, NotationGlyph.CHECK)
        with pytest.raises(ValueError):
            NotationState(NotationColor.YELLOW, NotationGlyph.CHECK)

    @settings(max_examples=300, deadline=None)
    @given(st.floats(min_value=0, max_value=0.05, allow_nan=False),
           st.floats(min_value=0, max_value=0.05, allow_nan=False))
    def test_monotone_in_distance(self, d1, d2):
        order = {NotationColor.GREEN: 0, NotationColor.YELLOW: 1,
                 NotationColor.RED: 2}
        lo, hi = sorted([d1, d2])
        assert (order[notation_for_distance(lo).color]
                <= order[notation_for_distance(hi).color])


class TestTrackLocator:
    def test_yellow_at_ten_millimeters(self):
        session = two_target_session()
        notation = session.track(moved([0.19, 0.0, 0.1]))
        assert notation.color is NotationColor.YELLOW

    def test_green_at_goal(self):
        session = two_target_session()
        notation = session.track(moved([0.2, 0.0, 0.1]))
        assert notation.color is NotationColor.GREEN
        assert session.states[0].live_distance == 0.0

    def test_red_far_from_goal(self):
        session = two_target_session()
        notation = session.track(moved([0.15, 0.0, 0.1]))
        assert notation.color is NotationColor.RED

    def test_rail_projection_discards_off_axis_error(self):
        session = two_target_session()
        # 40 cm off the rail laterally, but the projection is at the goal
        notation = session.track(moved([0.2, 0.4, 0.1]))
        assert notation.color is NotationColor.GREEN

    def test_free_target_uses_raw_point(self):
        target = CalibrationTarget(target_id="p", sequence=0, goal=[0, 0, 0])
        session = CalibrationSession([target])
        notation = session.track(moved([0.0, 0.01, 0.0]))
        assert notation.color is NotationColor.YELLOW


class TestSequencing:
    def test_release_while_green_completes_and_advances(self):
        session = two_target_session()
        session.track(moved([0.2, 0.0, 0.1]))
        session.commit(released([0.2, 0.0, 0.1]))
        assert session.states[0].completed
        assert session.current_index == 1

    def test_release_while_yellow_does_not_complete(self):
        session = two_target_session()
        session.track(moved([0.19, 0.0, 0.1]))
        session.commit(released([0.19, 0.0, 0.1]))
        assert not session.states[0].completed
        assert session.current_index == 0

    def test_advance_requires_completion(self):
        session = two_target_session()
        session.track(moved([0.19, 0.0, 0.1]))
        moved_on, notation = session.advance()
        assert not moved_on
        assert "hex-1" in notation.message

    def test_advance_idempotent_at_end(self):
        session = two_target_session()
        for goal in ([0.2, 0, 0.1], [0.5, 0, 0.1]):
            session.track(moved(goal))
            session.commit(released(goal))
        assert session.done
        for _ in range(3):
            moved_on, _ = session.advance()
            assert not moved_on
        assert session.current_index == 2

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.tuples(st.sampled_from(["move", "release"]),
                              st.floats(min_value=0.0, max_value=0.7,
                                        allow_nan=False)),
                    min_size=1, max_size=60))
    def test_fuzzed_sequences_never_skip(self, script):
        session = two_target_session()
        for op, x in script:
            event_point = [x, 0.0, 0.1]
            if op == "move":
                session.track(moved(event_point))
            else:
                session.commit(released(event_point))
            flags = [s.completed for s in session.states]
            # completed flags always form a prefix: no later target done early
            assert flags == sorted(flags, reverse=True)


class TestQcBoard:
    BOARDS = [("1", np.array([0.0, 0.0, 0.0])),
              ("2", np.array([0.1, 0.0, 0.0])),
              ("3", np.array([0.2, 0.0, 0.0]))]

    def test_nearest_board_within_tolerance(self):
        record = qc_board([0.101, 0.002, 0.0], self.BOARDS)
        assert record.board_id == "2"
        assert record.deviation == pytest.approx(math.hypot(0.001, 0.002),
                                                 abs=1e-12)
        assert record.passed
        assert record.notation.color is NotationColor.GREEN

    def test_exact_center_passes(self):
        record = qc_board([0.2, 0.0, 0.0], self.BOARDS)
        assert record.board_id == "3"
        assert record.deviation == 0.0

    def test_outside_tolerance_fails(self):
        record = qc_board([0.05, 0.0, 0.0], self.BOARDS)
        assert not record.passed
        assert record.notation.color is NotationColor.RED
        assert record.notation.glyph is NotationGlyph.CROSS

    def test_verdict_flips_exactly_at_tolerance(self):
        boards = [("1", np.array([0.0, 0.0, 0.0]))]
        at = qc_board([0.003175, 0.0, 0.0], boards)
        past = qc_board([math.nextafter(0.003175, 1.0), 0.0, 0.0], boards)
        assert at.passed
        assert not past.passed

    def test_tie_resolves_to_lowest_id(self):
        boards = [("2", np.array([0.1, 0.0, 0.0])),
                  ("1", np.array([-0.1, 0.0, 0.0]))]
        record = qc_board([0.0, 0.0, 0.0], boards)
        assert record.board_id == "1"

    def test_matches_brute_force_scan(self):
        rng = np.random.default_rng(71)
        boards = [(f"{i:02d}", rng.uniform(-1, 1, size=3)) for i in range(25)]
        for _ in range(2000):
            p = rng.uniform(-1.2, 1.2, size=3)
            record = qc_board(p, boards)
            oracle_id, _, oracle_dist = nearest_board_scan(p, boards)
            assert record.board_id == oracle_id
            assert record.deviation == oracle_dist

    def test_empty_boards_rejected(self):
        with pytest.raises(ValueError):
            qc_board([0, 0, 0], [])


class TestApplyAnchor:
    def test_identity_is_noop(self):
        pts = np.array([[0.1, 0.2, 0.3], [1.0, -1.0, 0.5]])
        out = apply_anchor(RigidTransform.identity(), pts)
        assert np.allclose(out, pts, atol=1e-15)

    def test_pure_translation(self):
        pts = np.array([[0.0, 0.0, 0.0], [1.0, 2.0, 3.0]])
        t = np.array([0.5, -0.25, 0.125])
        out = apply_anchor(RigidTransform(position=t), pts)
        assert np.array_equal(out, pts + t)

    def test_isometry_over_random_transforms(self):
        rng = np.random.default_rng(83)
        for _ in range(1000):
            q = rng.normal(size=4)
            xf = RigidTransform(position=rng.uniform(-2, 2, size=3),
                                quaternion=q / np.linalg.norm(q))
            pts = rng.uniform(-1, 1, size=(8, 3))
            out = apply_anchor(xf, pts)
            d_in = np.linalg.norm(pts[:, None] - pts[None, :], axis=-1)
            d_out = np.linalg.norm(out[:, None] - out[None, :], axis=-1)
            scale = np.max(d_in) or 1.0
            assert np.max(np.abs(d_in - d_out)) / scale < 1e-12

    def test_non_rigid_rejected(self):
        bad = RigidTransform(position=[0, 0, 0], quaternion=[0.9, 0, 0, 0])
        with pytest.raises(NonRigidTransformError):
            apply_anchor(bad, np.zeros((1, 3)))
