"""Sequenced digital-twin calibration of tracked locators.

Each target is a goal point, optionally constrained to a travel rail (the
locator slides along a jig). While the operator holds a pinch, every moved
event re-projects the live position and refreshes the badge; releasing the
pinch while green completes the current target, and the sequence only ever
advances past completed targets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import CatalogError
from ..hand_tracking.pinch import PinchEvent, PinchKind
from ..transforms import RigidTransform, normalized, rotate, vec3
from ..units import GREEN_TOLERANCE, YELLOW_TOLERANCE, convert_length
from .notation import NotationState, info_notation, notation_for_distance


@dataclass
class Rail:
    """Line the locator travels along: anchor point plus unit direction."""

    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        self.point = vec3(self.point)
        self.direction = normalized(vec3(self.direction))

    def project(self, p: np.ndarray) -> np.ndarray:
        return self.point + float((p - self.point) @ self.direction) * self.direction

    def transformed(self, anchor: RigidTransform) -> "Rail":
        return Rail(point=anchor.apply(self.point),
                    direction=rotate(anchor.quaternion, self.direction))

    def to_dict(self) -> dict:
        return {"point": [float(c) for c in self.point],
                "direction": [float(c) for c in self.direction]}


@dataclass
class CalibrationTarget:
    target_id: str
    sequence: int
    goal: np.ndarray
    rail: Rail | None = None
    green_tolerance: float = GREEN_TOLERANCE
    yellow_tolerance: float = YELLOW_TOLERANCE

    def __post_init__(self):
        self.goal = vec3(self.goal)
        if not 0.0 < self.green_tolerance < self.yellow_tolerance:
            raise ValueError("need 0 < green tolerance < yellow tolerance")

    def transformed(self, anchor: RigidTransform) -> "CalibrationTarget":
        return CalibrationTarget(
            target_id=self.target_id,
            sequence=self.sequence,
            goal=anchor.apply(self.goal),
            rail=self.rail.transformed(anchor) if self.rail else None,
            green_tolerance=self.green_tolerance,
            yellow_tolerance=self.yellow_tolerance,
        )


@dataclass
class TargetState:
    live_position: np.ndarray | None = None
    live_distance: float | None = None
    notation: NotationState | None = None
    completed: bool = False

    def content(self) -> dict:
        return {"completed": self.completed, "live_distance": self.live_distance}


class CalibrationSession:
    """Single-writer state over an ordered target list."""

    def __init__(self, targets: list[CalibrationTarget],
                 anchor: RigidTransform | None = None):
        ordered = sorted(targets, key=lambda t: t.sequence)
        if anchor is not None:
            anchor.require_rigid()
            ordered = [t.transformed(anchor) for t in ordered]
        self.targets = ordered
        self.states = [TargetState() for _ in self.targets]
        self.anchor = anchor

    @property
    def current_index(self) -> int:
        for i, s in enumerate(self.states):
            if not s.completed:
                return i
        return len(self.targets)

    @property
    def done(self) -> bool:
        return self.current_index >= len(self.targets)

    @property
    def current_target(self) -> CalibrationTarget | None:
        i = self.current_index
        return self.targets[i] if i < len(self.targets) else None

    def track(self, event: PinchEvent) -> NotationState:
        """Refresh the current target from a ``moved`` pinch event."""
        if event.kind is not PinchKind.MOVED:
            raise ValueError("track expects a moved pinch event")
        target = self.current_target
        if target is None:
            return info_notation("all locators are already placed")
        state = self.states[self.current_index]
        live = target.rail.project(event.point) if target.rail else event.point
        delta = live - target.goal
        distance = math.sqrt(float(delta @ delta))
        notation = notation_for_distance(
            distance, target.green_tolerance, target.yellow_tolerance,
            message=f"locator {target.target_id}: {distance * 1000:.1f} mm from goal",
        )
        state.live_position = live
        state.live_distance = distance
        state.notation = notation
        return notation

    def commit(self, event: PinchEvent) -> NotationState:
        """Handle a ``released`` pinch: completes the target if it sits green."""
        if event.kind is not PinchKind.RELEASED:
            raise ValueError("commit expects a released pinch event")
        target = self.current_target
        if target is None:
            return info_notation("all locators are already placed")
        state = self.states[self.current_index]
        if (state.live_distance is not None
                and state.live_distance <= target.green_tolerance):
            state.completed = True
            return state.notation
        return info_notation(
            f"locator {target.target_id} released outside tolerance; keep adjusting"
        )

    def advance(self) -> tuple[bool, NotationState]:
        """Report whether the sequence may move past the current target.

        The current index is always the first incomplete target, so advancing
        is a status query plus the operator-facing message; it is idempotent
        once the sequence has finished.
        """
        if self.done:
            return False, info_notation("sequence complete")
        state = self.states[self.current_index]
        target = self.targets[self.current_index]
        if state.completed:
            return True, info_notation(f"move on to locator {target.target_id}")
        return False, info_notation(
            f"finish locator {target.target_id} before moving on"
        )

    def content(self) -> dict:
        return {
            "current_index": self.current_index,
            "targets": [s.content() for s in self.states],
        }


def _length(entry: dict, key: str, unit: str, default_m: float) -> float:
    if key in entry:
        return convert_length(entry[key], unit)
    return default_m


def _parse_target(entry: dict, unit: str, index: int) -> CalibrationTarget:
    rail = None
    if entry.get("rail") is not None:
        rail = Rail(point=[convert_length(c, unit) for c in entry["rail"]["point"]],
                    direction=entry["rail"]["direction"])
    return CalibrationTarget(
        target_id=str(entry.get("id", index)),
        sequence=int(entry.get("sequence", index)),
        goal=[convert_length(c, unit) for c in entry["goal"]],
        rail=rail,
        green_tolerance=_length(entry, "green_tolerance", unit, GREEN_TOLERANCE),
        yellow_tolerance=_length(entry, "yellow_tolerance", unit, YELLOW_TOLERANCE),
    )


def load_calibration_job(path: str | Path) -> tuple[list[CalibrationTarget], RigidTransform | None]:
    """Load a calibration job file: {"targets": [...], "anchor"?, "unit"?}."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"calibration job is not valid JSON: {exc}") from exc
    unit = data.get("unit", "m")
    try:
        targets = [_parse_target(e, unit, i) for i, e in enumerate(data["targets"])]
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"calibration job malformed: {exc}") from exc
    if not targets:
        raise CatalogError("calibration job has no targets")
    anchor = None
    if data.get("anchor") is not None:
        anchor = RigidTransform.from_dict(data["anchor"])
    return targets, anchor
