from .joints import JointId, JointPose, HandFrame, Handedness
from .pinch import (
    PinchDetectorConfig,
    PinchEvent,
    PinchDetector,
    pinch_distance,
    smooth,
)

__all__ = [
    "JointId",
    "JointPose",
    "HandFrame",
    "Handedness",
    "PinchDetectorConfig",
    "PinchEvent",
    "PinchDetector",
    "pinch_distance",
    "smooth",
]
