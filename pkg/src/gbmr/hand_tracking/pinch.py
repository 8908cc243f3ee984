"""Pinch recognition: hysteresis automaton with smoothing and debounce.

A pinch is recognized when the thumb tip and index fingertip come close
together. The detector is a two-state machine (IDLE / PINCHED) driven by
the smoothed tip distance: it engages below ``engage_threshold``, releases
above ``release_threshold``, and ignores the band between the two so jitter
near a single threshold cannot chatter. Digitized points are the midpoint
of the two (smoothed) tips.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import OutOfOrderFrameError
from .joints import HandFrame, Handedness, JointId


@dataclass(frozen=True)
class PinchDetectorConfig:
    engage_threshold: float = 0.015
    release_threshold: float = 0.025
    min_confidence: float = 0.5
    debounce_ms: int = 200
    smoothing_window: int = 5

    def __post_init__(self):
        if not 0.0 < self.engage_threshold < self.release_threshold:
            raise ValueError(
                "need 0 < engage_threshold < release_threshold, got "
                f"{self.engage_threshold} / {self.release_threshold}"
            )
        if self.debounce_ms < 0:
            raise ValueError("debounce_ms must be >= 0")
        if self.smoothing_window < 1:
            raise ValueError("smoothing_window must be >= 1")
        if not 0.0 <= self.min_confidence <= 1.0:
            raise ValueError("min_confidence must be in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "engage_threshold": self.engage_threshold,
            "release_threshold": self.release_threshold,
            "min_confidence": self.min_confidence,
            "debounce_ms": self.debounce_ms,
            "smoothing_window": self.smoothing_window,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PinchDetectorConfig":
        return cls(**data)


class PinchKind(str, Enum):
    ENGAGED = "engaged"
    MOVED = "moved"
    RELEASED = "released"


@dataclass
class PinchEvent:
    timestamp: int
    handedness: Handedness
    kind: PinchKind
    point: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, PinchEvent):
            return NotImplemented
        return (self.timestamp == other.timestamp
                and self.handedness == other.handedness
                and self.kind == other.kind
                and np.array_equal(self.point, other.point))


def pinch_distance(frame: HandFrame) -> float:
    """Euclidean distance between the thumb tip and the index fingertip."""
    d = frame.position(JointId.THUMB_TIP) - frame.position(JointId.INDEX_TIP)
    return math.sqrt(float(d @ d))


def smooth(history: list[HandFrame]) -> HandFrame:
    """Positional moving average over a window of same-hand frames.

    Joint positions are the arithmetic mean over the window; orientations,
    timestamp, and confidence come from the newest frame. Orientation
    smoothing is deliberately not done: only tip positions feed downstream.
    """
    if not history:
        raise ValueError("cannot smooth an empty history")
    newest = history[-1]
    if any(f.handedness != newest.handedness for f in history):
        raise ValueError("smoothing window mixes handedness")
    if len(history) == 1:
        return newest
    joints = {}
    for joint in JointId:
        mean_pos = np.mean([f.joints[joint].position for f in history], axis=0)
        joints[joint] = type(newest.joints[joint])(
            position=mean_pos, orientation=newest.joints[joint].orientation
        )
    return HandFrame(
        timestamp=newest.timestamp,
        handedness=newest.handedness,
        joints=joints,
        confidence=newest.confidence,
    )


class _Phase(Enum):
    IDLE = 0
    PINCHED = 1


class PinchDetector:
    """Per-hand pinch state machine.

    Feed frames in timestamp order via :meth:`step`; each call returns the
    pinch events emitted for that frame. The machine is deterministic:
    identical frame sequences produce bit-identical event sequences. Low
    confidence frames hold the current state and emit nothing (they are
    also kept out of the smoothing window).
    """

    def __init__(self, config: PinchDetectorConfig, handedness: Handedness):
        self.config = config
        self.handedness = Handedness(handedness)
        self._phase = _Phase.IDLE
        self._tips: deque[np.ndarray] = deque(maxlen=config.smoothing_window)
        self._last_timestamp: int | None = None
        self._last_release: int | None = None

    @property
    def pinched(self) -> bool:
        return self._phase is _Phase.PINCHED

    def step(self, frame: HandFrame) -> list[PinchEvent]:
        if frame.handedness != self.handedness:
            raise ValueError(
                f"{frame.handedness.value} frame fed to {self.handedness.value} detector"
            )
        if self._last_timestamp is not None and frame.timestamp <= self._last_timestamp:
            raise OutOfOrderFrameError(
                f"frame at {frame.timestamp} ms not after {self._last_timestamp} ms"
            )
        self._last_timestamp = frame.timestamp

        if frame.confidence < self.config.min_confidence:
            return []

        self._tips.append(np.stack([
            frame.position(JointId.THUMB_TIP),
            frame.position(JointId.INDEX_TIP),
        ]))
        thumb, index = np.mean(self._tips, axis=0)
        delta = thumb - index
        distance = math.sqrt(float(delta @ delta))
        midpoint = (thumb + index) / 2.0

        if self._phase is _Phase.IDLE:
            debounced = (
                self._last_release is None
                or frame.timestamp - self._last_release >= self.config.debounce_ms
            )
            if distance < self.config.engage_threshold and debounced:
                self._phase = _Phase.PINCHED
                return [self._event(frame, PinchKind.ENGAGED, midpoint)]
            return []

        if distance > self.config.release_threshold:
            self._phase = _Phase.IDLE
            self._last_release = frame.timestamp
            return [self._event(frame, PinchKind.RELEASED, midpoint)]
        return [self._event(frame, PinchKind.MOVED, midpoint)]

    def _event(self, frame: HandFrame, kind: PinchKind, point: np.ndarray) -> PinchEvent:
        return PinchEvent(
            timestamp=frame.timestamp,
            handedness=self.handedness,
            kind=kind,
            point=point,
        )
