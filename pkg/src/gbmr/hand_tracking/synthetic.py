"""Synthetic hand-frame generation for fixtures, tests, and replay authoring.

Builds well-formed 25-joint frames around a cursor point. The thumb and
index tips straddle the cursor symmetrically, so their midpoint is the
cursor; ``tip_gap`` controls the pinch distance directly.
"""

from __future__ import annotations

import numpy as np

from ..transforms import IDENTITY_QUAT, vec3
from .joints import HandFrame, Handedness, JointId, JointPose

# Rough rest offsets (meters) from the cursor for the 23 joints that are not
# the two driven tips. Only plausibility matters; detection reads the tips.
_REST_OFFSETS = {
    JointId.WRIST: (-0.09, -0.02, -0.03),
    JointId.THUMB_METACARPAL: (-0.07, 0.01, -0.02),
    JointId.THUMB_PROXIMAL: (-0.05, 0.015, -0.012),
    JointId.THUMB_DISTAL: (-0.025, 0.01, -0.005),
    JointId.INDEX_METACARPAL: (-0.07, -0.01, -0.02),
    JointId.INDEX_PROXIMAL: (-0.045, -0.012, -0.01),
    JointId.INDEX_INTERMEDIATE: (-0.028, -0.01, -0.006),
    JointId.INDEX_DISTAL: (-0.014, -0.008, -0.003),
    JointId.MIDDLE_METACARPAL: (-0.072, -0.022, -0.02),
    JointId.MIDDLE_PROXIMAL: (-0.05, -0.028, -0.012),
    JointId.MIDDLE_INTERMEDIATE: (-0.033, -0.03, -0.008),
    JointId.MIDDLE_DISTAL: (-0.02, -0.031, -0.005),
    JointId.MIDDLE_TIP: (-0.01, -0.032, -0.003),
    JointId.RING_METACARPAL: (-0.075, -0.034, -0.021),
    JointId.RING_PROXIMAL: (-0.055, -0.042, -0.014),
    JointId.RING_INTERMEDIATE: (-0.04, -0.045, -0.01),
    JointId.RING_DISTAL: (-0.028, -0.046, -0.007),
    JointId.RING_TIP: (-0.019, -0.047, -0.005),
    JointId.LITTLE_METACARPAL: (-0.078, -0.045, -0.022),
    JointId.LITTLE_PROXIMAL: (-0.06, -0.055, -0.016),
    JointId.LITTLE_INTERMEDIATE: (-0.048, -0.058, -0.012),
    JointId.LITTLE_DISTAL: (-0.039, -0.059, -0.009),
    JointId.LITTLE_TIP: (-0.032, -0.06, -0.007),
}

PINCHED_GAP = 0.005
APART_GAP = 0.060


def synthetic_frame(
    timestamp: int,
    cursor,
    tip_gap: float,
    handedness: Handedness = Handedness.RIGHT,
    confidence: float = 1.0,
    gap_axis=(0.0, 0.0, 1.0),
) -> HandFrame:
    """One frame with the thumb/index tips separated by ``tip_gap`` about the cursor."""
    cursor = vec3(cursor)
    axis = vec3(gap_axis)
    half = axis * (tip_gap / 2.0)
    joints = {
        joint: JointPose(position=cursor + np.asarray(off), orientation=IDENTITY_QUAT)
        for joint, off in _REST_OFFSETS.items()
    }
    joints[JointId.THUMB_TIP] = JointPose(position=cursor - half, orientation=IDENTITY_QUAT)
    joints[JointId.INDEX_TIP] = JointPose(position=cursor + half, orientation=IDENTITY_QUAT)
    return HandFrame(timestamp=timestamp, handedness=handedness,
                     joints=joints, confidence=confidence)


def pinch_script(
    points,
    start_ms: int = 0,
    frame_ms: int = 33,
    dwell_frames: int = 6,
    pinch_frames: int = 8,
    travel_frames: int = 10,
    handedness: Handedness = Handedness.RIGHT,
) -> list[HandFrame]:
    """Frames that pinch once at each point in order.

    Each visit parks the cursor with tips apart long enough to flush the
    smoothing window, pinches long enough for the smoothed distance to cross
    the engage threshold, then separates again; travel frames between points
    also satisfy the release debounce at default settings.
    """
    frames: list[HandFrame] = []
    t = start_ms
    prev = None
    for target in points:
        target = vec3(target)
        if prev is not None:
            for i in range(1, travel_frames + 1):
                cursor = prev + (target - prev) * (i / travel_frames)
                frames.append(synthetic_frame(t, cursor, APART_GAP, handedness))
                t += frame_ms
        for _ in range(dwell_frames):
            frames.append(synthetic_frame(t, target, APART_GAP, handedness))
            t += frame_ms
        for _ in range(pinch_frames):
            frames.append(synthetic_frame(t, target, PINCHED_GAP, handedness))
            t += frame_ms
        for _ in range(dwell_frames):
            frames.append(synthetic_frame(t, target, APART_GAP, handedness))
            t += frame_ms
        prev = target
    return frames


def drag_script(
    path,
    start_ms: int = 0,
    frame_ms: int = 33,
    settle_frames: int = 6,
    handedness: Handedness = Handedness.RIGHT,
) -> list[HandFrame]:
    """Frames that engage at the first path point, drag through the rest, then release.

    Used for continuous-tracking workflows: one engage, a ``moved`` stream
    along the path, one release at the final point.
    """
    path = [vec3(p) for p in path]
    if not path:
        raise ValueError("drag path must contain at least one point")
    frames: list[HandFrame] = []
    t = start_ms
    for _ in range(settle_frames):
        frames.append(synthetic_frame(t, path[0], APART_GAP, handedness))
        t += frame_ms
    for _ in range(settle_frames):
        frames.append(synthetic_frame(t, path[0], PINCHED_GAP, handedness))
        t += frame_ms
    for point in path[1:]:
        for _ in range(settle_frames):
            frames.append(synthetic_frame(t, point, PINCHED_GAP, handedness))
            t += frame_ms
    for _ in range(settle_frames):
        frames.append(synthetic_frame(t, path[-1], APART_GAP, handedness))
        t += frame_ms
    return frames
