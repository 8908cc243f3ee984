"""Wire protocol and gesture-log formats.

Everything on the wire is JSON, one message per WebSocket text frame or
JSONL line. Serialization is canonical — sorted keys, compact separators,
shortest round-trip floats — so identical state always produces
byte-identical output, which is what makes replay transcripts comparable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Union

from ..calibration.notation import NotationState
from ..errors import ProtocolError
from ..hand_tracking.joints import HandFrame
from ..transforms import RigidTransform

PROTOCOL_VERSION = 1
LOG_SCHEMA = 1
LOG_HEADER = {"schema": LOG_SCHEMA, "units": "m"}


class WorkflowKind(str, Enum):
    LOG_HALVING = "log_halving"
    HALF_LOG_CUTTING = "half_log_cutting"
    LAYER_TEMPLATE = "layer_template"
    TUBE_INDEX = "tube_index"
    HEXNUT_JIG = "hexnut_jig"
    PANEL_QC = "panel_qc"


COMMAND_NAMES = ("reset", "undo_point", "confirm", "select_workflow", "set_param")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ----------------------------------------------------------------- events

@dataclass
class HandFrameEvent:
    frame: HandFrame

    @property
    def timestamp(self) -> int:
        return self.frame.timestamp

    def to_dict(self) -> dict:
        return {"type": "hand_frame", **self.frame.to_dict()}


@dataclass
class AnchorPoseEvent:
    timestamp: int
    pose: RigidTransform

    def to_dict(self) -> dict:
        return {"type": "anchor_pose", "t": int(self.timestamp),
                **self.pose.to_dict()}


@dataclass
class CommandEvent:
    timestamp: int
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in COMMAND_NAMES:
            raise ProtocolError(f"unknown command {self.name!r}")

    def to_dict(self) -> dict:
        out = {"type": "command", "t": int(self.timestamp), "name": self.name}
        if self.params:
            out["params"] = self.params
        return out


InputEvent = Union[HandFrameEvent, AnchorPoseEvent, CommandEvent]


def serialize_event(event: InputEvent) -> str:
    return canonical_json(event.to_dict())


def parse_event(data: Union[str, dict]) -> InputEvent:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"event is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ProtocolError("event must be a JSON object")
    kind = data.get("type")
    try:
        if kind == "hand_frame":
            return HandFrameEvent(frame=HandFrame.from_dict(data))
        if kind == "anchor_pose":
            return AnchorPoseEvent(timestamp=data["t"],
                                   pose=RigidTransform.from_dict(data))
        if kind == "command":
            return CommandEvent(timestamp=data["t"], name=data["name"],
                                params=data.get("params", {}))
    except ProtocolError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed {kind} event: {exc}") from exc
    raise ProtocolError(f"unknown event type {kind!r}")


# ----------------------------------------------------------------- updates

@dataclass
class GeometryAdded:
    revision: int
    object_id: str
    geometry: dict

    def to_dict(self) -> dict:
        return {"type": "geometry_added", "rev": self.revision,
                "id": self.object_id, "geometry": self.geometry}


@dataclass
class NotationUpdate:
    revision: int
    subject: str
    notation: NotationState

    def to_dict(self) -> dict:
        return {"type": "notation", "rev": self.revision,
                "subject": self.subject, **self.notation.to_dict()}


@dataclass
class Instruction:
    revision: int
    text: str

    def to_dict(self) -> dict:
        return {"type": "instruction", "rev": self.revision, "text": self.text}


@dataclass
class ToolpathReady:
    revision: int
    ref: str
    document: dict

    def to_dict(self) -> dict:
        return {"type": "toolpath_ready", "rev": self.revision,
                "ref": self.ref, "document": self.document}


@dataclass
class Identification:
    revision: int
    result: dict

    def to_dict(self) -> dict:
        return {"type": "identification", "rev": self.revision,
                "result": self.result}


@dataclass
class ErrorUpdate:
    revision: int
    code: str
    text: str

    def to_dict(self) -> dict:
        return {"type": "error", "rev": self.revision,
                "code": self.code, "text": self.text}


SceneUpdate = Union[GeometryAdded, NotationUpdate, Instruction,
                    ToolpathReady, Identification, ErrorUpdate]


def serialize_update(update: SceneUpdate) -> str:
    return canonical_json(update.to_dict())


def parse_update(data: Union[str, dict]) -> SceneUpdate:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"update is not valid JSON: {exc}") from exc
    kind = data.get("type")
    try:
        if kind == "geometry_added":
            return GeometryAdded(revision=data["rev"], object_id=data["id"],
                                 geometry=data["geometry"])
        if kind == "notation":
            return NotationUpdate(revision=data["rev"], subject=data["subject"],
                                  notation=NotationState.from_dict(data))
        if kind == "instruction":
            return Instruction(revision=data["rev"], text=data["text"])
        if kind == "toolpath_ready":
            return ToolpathReady(revision=data["rev"], ref=data["ref"],
                                 document=data["document"])
        if kind == "identification":
            return Identification(revision=data["rev"], result=data["result"])
        if kind == "error":
            return ErrorUpdate(revision=data["rev"], code=data["code"],
                               text=data["text"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed {kind} update: {exc}") from exc
    raise ProtocolError(f"unknown update type {kind!r}")


# ------------------------------------------------------------ gesture logs

def write_gesture_log(path: str | Path, events: list[InputEvent]) -> None:
    """Write a replayable JSONL log: header line, then one event per line."""
    lines = [canonical_json(LOG_HEADER)]
    lines.extend(serialize_event(e) for e in events)
    Path(path).write_text("\n".join(lines) + "\n")


def read_gesture_log(source: str | Path | list[str]) -> list[InputEvent]:
    """Parse a gesture log; raises ProtocolError with the offending line number."""
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text().splitlines()
    else:
        lines = list(source)
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        return []
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"line 1: header is not valid JSON: {exc}") from exc
    if header.get("schema") != LOG_SCHEMA:
        raise ProtocolError(f"line 1: unsupported log schema {header.get('schema')!r}")
    if header.get("units") != "m":
        raise ProtocolError(f"line 1: unsupported units {header.get('units')!r}")
    events = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            events.append(parse_event(line))
        except ProtocolError as exc:
            raise ProtocolError(f"line {lineno}: {exc.message}") from exc
    return events
