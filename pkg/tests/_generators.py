"""Seeded random protocol-message generators for round-trip testing."""

from __future__ import annotations

import random

from gbmr.calibration.notation import NotationState
from gbmr.hand_tracking.synthetic import synthetic_frame
from gbmr.session.wire import (
    AnchorPoseEvent,
    CommandEvent,
    ErrorUpdate,
    GeometryAdded,
    HandFrameEvent,
    Identification,
    Instruction,
    NotationUpdate,
    ToolpathReady,
)
from gbmr.transforms import RigidTransform


def random_update(rng: random.Random):
    kind = rng.choice(["geometry", "notation", "instruction", "toolpath",
                       "identification", "error"])
    rev = rng.randint(1, 10**6)
    if kind == "geometry":
        return GeometryAdded(rev, f"obj-{rng.randint(0, 99)}",
                             {"kind": "point",
                              "position": [rng.uniform(-5, 5) for _ in range(3)]})
    if kind == "notation":
        color, glyph = rng.choice([("green", "check"), ("yellow", "cross"),
                                   ("red", "cross"), ("yellow", "none")])
        return NotationUpdate(rev, f"subject-{rng.randint(0, 9)}",
                              NotationState.from_dict(
                                  {"color": color, "glyph": glyph,
                                   "message": f"m{rng.randint(0, 999)}"}))
    if kind == "instruction":
        return Instruction(rev, f"instruction {rng.randint(0, 999)}")
    if kind == "toolpath":
        return ToolpathReady(rev, "toolpath-1", {
            "schema": 1,
            "targets": [{"pos": [rng.uniform(-2, 2) for _ in range(3)],
                         "quat": [1.0, 0.0, 0.0, 0.0],
                         "kind": rng.choice(["approach", "cut", "retract"])}],
            "metadata": {"workflow": "log_halving"}})
    if kind == "identification":
        return Identification(rev, {"kind": "tube",
                                    "entry_id": f"T{rng.randint(1, 54):02d}",
                                    "measured": rng.uniform(0.5, 3.0),
                                    "deviation": rng.uniform(0, 0.0127)})
    return ErrorUpdate(rev, "no_match", f"detail {rng.randint(0, 999)}")


def random_event(rng: random.Random):
    kind = rng.choice(["frame", "anchor", "command"])
    t = rng.randint(0, 10**8)
    if kind == "frame":
        cursor = [rng.uniform(-2, 2) for _ in range(3)]
        return HandFrameEvent(synthetic_frame(t, cursor,
                                              rng.uniform(0.0, 0.12),
                                              confidence=rng.random()))
    if kind == "anchor":
        return AnchorPoseEvent(
            timestamp=t,
            pose=RigidTransform(position=[rng.uniform(-3, 3) for _ in range(3)]))
    name = rng.choice(["reset", "undo_point", "confirm", "set_param",
                       "select_workflow"])
    params = {}
    if name == "set_param":
        params = {"board_count": rng.randint(1, 6)}
    if name == "select_workflow":
        params = {"workflow": "log_halving"}
    return CommandEvent(timestamp=t, name=name, params=params)
