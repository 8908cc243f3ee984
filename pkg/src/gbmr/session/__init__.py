from .wire import (
    WorkflowKind,
    InputEvent,
    HandFrameEvent,
    AnchorPoseEvent,
    CommandEvent,
    SceneUpdate,
    GeometryAdded,
    NotationUpdate,
    Instruction,
    ToolpathReady,
    Identification,
    ErrorUpdate,
    parse_event,
    serialize_event,
    parse_update,
    serialize_update,
    canonical_json,
    read_gesture_log,
    write_gesture_log,
)
from .config import SessionConfig, load_data_file
from .state import SessionState
from .replay import replay, ReplayResult

__all__ = [
    "WorkflowKind",
    "InputEvent",
    "HandFrameEvent",
    "AnchorPoseEvent",
    "CommandEvent",
    "SceneUpdate",
    "GeometryAdded",
    "NotationUpdate",
    "Instruction",
    "ToolpathReady",
    "Identification",
    "ErrorUpdate",
    "parse_event",
    "serialize_event",
    "parse_update",
    "serialize_update",
    "canonical_json",
    "read_gesture_log",
    "write_gesture_log",
    "SessionConfig",
    "load_data_file",
    "SessionState",
    "replay",
    "ReplayResult",
]
