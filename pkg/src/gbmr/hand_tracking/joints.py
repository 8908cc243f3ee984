"""Hand-joint model: 25 posed joints per hand, one frame per sample.

The articulated-tracking skeleton has a wrist, four thumb joints, and five
joints for each of the four fingers (the thumb has no intermediate joint).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..transforms import vec3, quat4, is_unit_quat


class Handedness(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class JointId(str, Enum):
    WRIST = "wrist"

    THUMB_METACARPAL = "thumb_metacarpal"
    THUMB_PROXIMAL = "thumb_proximal"
    THUMB_DISTAL = "thumb_distal"
    THUMB_TIP = "thumb_tip"

    INDEX_METACARPAL = "index_metacarpal"
    INDEX_PROXIMAL = "index_proximal"
    INDEX_INTERMEDIATE = "index_intermediate"
    INDEX_DISTAL = "index_distal"
    INDEX_TIP = "index_tip"

    MIDDLE_METACARPAL = "middle_metacarpal"
    MIDDLE_PROXIMAL = "middle_proximal"
    MIDDLE_INTERMEDIATE = "middle_intermediate"
    MIDDLE_DISTAL = "middle_distal"
    MIDDLE_TIP = "middle_tip"

    RING_METACARPAL = "ring_metacarpal"
    RING_PROXIMAL = "ring_proximal"
    RING_INTERMEDIATE = "ring_intermediate"
    RING_DISTAL = "ring_distal"
    RING_TIP = "ring_tip"

    LITTLE_METACARPAL = "little_metacarpal"
    LITTLE_PROXIMAL = "little_proximal"
    LITTLE_INTERMEDIATE = "little_intermediate"
    LITTLE_DISTAL = "little_distal"
    LITTLE_TIP = "little_tip"


JOINT_COUNT = 25
assert len(JointId) == JOINT_COUNT  # 1 wrist + 4 thumb + 4 fingers x 5


@dataclass
class JointPose:
    """World-frame position (meters) and orientation of one joint."""

    position: np.ndarray
    orientation: np.ndarray

    def __post_init__(self):
        self.position = vec3(self.position)
        self.orientation = quat4(self.orientation)
        if not is_unit_quat(self.orientation):
            n = math.sqrt(float(self.orientation @ self.orientation))
            raise ValueError(f"joint orientation norm {n:.9f} is not 1")

    def to_dict(self) -> dict:
        return {"pos": [float(c) for c in self.position],
                "quat": [float(c) for c in self.orientation]}

    @classmethod
    def from_dict(cls, data: dict) -> "JointPose":
        return cls(position=data["pos"], orientation=data["quat"])

    def __eq__(self, other) -> bool:
        if not isinstance(other, JointPose):
            return NotImplemented
        return (np.array_equal(self.position, other.position)
                and np.array_equal(self.orientation, other.orientation))


@dataclass
class HandFrame:
    """One timestamped sample of all 25 joint poses for one hand.

    ``timestamp`` is in monotonic milliseconds; streams must be strictly
    increasing per handedness (enforced by the consumer, not here).
    """

    timestamp: int
    handedness: Handedness
    joints: dict[JointId, JointPose]
    confidence: float = 1.0

    def __post_init__(self):
        self.handedness = Handedness(self.handedness)
        if len(self.joints) != JOINT_COUNT or set(self.joints) != set(JointId):
            missing = sorted(j.value for j in set(JointId) - set(self.joints))
            raise ValueError(f"frame must carry all 25 joints; missing {missing}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")

    def position(self, joint: JointId) -> np.ndarray:
        return self.joints[joint].position

    def to_dict(self) -> dict:
        return {
            "t": int(self.timestamp),
            "hand": self.handedness.value,
            "confidence": float(self.confidence),
            "joints": {j.value: p.to_dict() for j, p in self.joints.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HandFrame":
        joints = {JointId(name): JointPose.from_dict(p)
                  for name, p in data["joints"].items()}
        return cls(timestamp=data["t"], handedness=data["hand"],
                   joints=joints, confidence=data.get("confidence", 1.0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HandFrame):
            return NotImplemented
        return (self.timestamp == other.timestamp
                and self.handedness == other.handedness
                and self.confidence == other.confidence
                and self.joints == other.joints)
