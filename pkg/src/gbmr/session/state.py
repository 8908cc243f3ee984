"""Workflow state machines folded over input events.

A session is a pure fold: starting from a fixed configuration, every input
event maps deterministically to a state change plus zero or more scene
updates with strictly increasing revision numbers. Replaying a recorded
event log therefore reproduces both the state and the update stream
byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..calibration.qc import apply_anchor, qc_board
from ..calibration.session import CalibrationSession
from ..errors import (
    DegenerateGeometryError,
    GbmrError,
    OutOfOrderFrameError,
    SnapDistanceError,
)
from ..geometry.cuts import halving_surface, place_cut, validate_cut
from ..geometry.fitting import circumcircle, define_half_log, fit_cylinder
from ..geometry.primitives import MountBox
from ..geometry.toolpath import cut_toolpath, halving_toolpath
from ..geometry.cuts import BoardSpec
from ..hand_tracking.joints import Handedness
from ..hand_tracking.pinch import PinchDetector, PinchEvent, PinchKind
from ..identification.catalogs import GroundPlane
from ..identification.matching import TubeAssignments, identify_layer, identify_tube
from ..transforms import RigidTransform
from .config import SessionConfig
from .wire import (
    AnchorPoseEvent,
    CommandEvent,
    ErrorUpdate,
    GeometryAdded,
    HandFrameEvent,
    Identification,
    InputEvent,
    Instruction,
    NotationUpdate,
    SceneUpdate,
    ToolpathReady,
    WorkflowKind,
)

POINT_WORKFLOWS = {
    WorkflowKind.LOG_HALVING,
    WorkflowKind.HALF_LOG_CUTTING,
    WorkflowKind.LAYER_TEMPLATE,
    WorkflowKind.TUBE_INDEX,
    WorkflowKind.PANEL_QC,
}


@dataclass
class _Derived:
    """Models and toolpaths recomputed from the digitized point list."""

    models: dict
    toolpaths: dict
    problems: list[tuple[str, GbmrError]]


class SessionState:
    """One workflow run: digitized points, derived models, feedback stream."""

    def __init__(self, config: SessionConfig):
        self.config = config
        self.workflow = config.workflow
        self.revision = 0
        self.last_timestamp: int | None = None
        self.detectors: dict[Handedness, PinchDetector] = {}
        self.points: list[np.ndarray] = []
        self.anchor: RigidTransform | None = None
        self.models: dict[str, object] = {}
        self.toolpaths: dict[str, object] = {}
        self.cut_confirmed = False
        self.assignments = TubeAssignments()
        self.identifications: list[dict] = []
        self.calibration = self._fresh_calibration()
        self.qc_records: list = []

    # ------------------------------------------------------------ plumbing

    def _fresh_calibration(self) -> CalibrationSession | None:
        if self.config.calibration_targets is None:
            return None
        return CalibrationSession(self.config.calibration_targets,
                                  self.config.calibration_anchor)

    def _next_rev(self) -> int:
        self.revision += 1
        return self.revision

    def _instruction(self, text: str) -> Instruction:
        return Instruction(self._next_rev(), text)

    def _error(self, exc: GbmrError) -> ErrorUpdate:
        return ErrorUpdate(self._next_rev(), exc.code, exc.message)

    def _geometry(self, object_id: str, payload: dict) -> GeometryAdded:
        return GeometryAdded(self._next_rev(), object_id, payload)

    def _notation(self, subject: str, notation) -> NotationUpdate:
        return NotationUpdate(self._next_rev(), subject, notation)

    def content(self) -> dict:
        """Domain content for fold-equality checks.

        Excludes the revision counter and detector smoothing buffers:
        those track the transport, not the digitized state.
        """
        return {
            "workflow": self.workflow.value if self.workflow else None,
            "points": [[float(c) for c in p] for p in self.points],
            "models": {k: _model_content(v) for k, v in self.models.items()},
            "toolpaths": {k: tp.to_document() for k, tp in self.toolpaths.items()},
            "assignments": self.assignments.content(),
            "identifications": list(self.identifications),
            "calibration": self.calibration.content() if self.calibration else None,
            "qc": [r.to_dict() for r in self.qc_records],
        }

    # ------------------------------------------------------------ stepping

    def step(self, event: InputEvent) -> list[SceneUpdate]:
        """Fold one event into the session; returns the emitted updates."""
        ts = event.timestamp
        if self.last_timestamp is not None and ts < self.last_timestamp:
            return [self._error(OutOfOrderFrameError(
                f"event at {ts} ms precedes {self.last_timestamp} ms"))]
        self.last_timestamp = ts

        if isinstance(event, HandFrameEvent):
            return self._on_frame(event)
        if isinstance(event, AnchorPoseEvent):
            return self._on_anchor(event)
        if isinstance(event, CommandEvent):
            return self._on_command(event)
        return [self._error(GbmrError(f"unhandled event {type(event).__name__}"))]

    def _on_frame(self, event: HandFrameEvent) -> list[SceneUpdate]:
        if self.workflow is None:
            return [self._error(GbmrError("select a workflow before streaming frames"))]
        frame = event.frame
        detector = self.detectors.get(frame.handedness)
        if detector is None:
            detector = PinchDetector(self.config.pinch, frame.handedness)
            self.detectors[frame.handedness] = detector
        try:
            pinches = detector.step(frame)
        except OutOfOrderFrameError as exc:
            return [self._error(exc)]
        updates: list[SceneUpdate] = []
        for pinch in pinches:
            updates.extend(self._on_pinch(pinch))
        return updates

    def _on_anchor(self, event: AnchorPoseEvent) -> list[SceneUpdate]:
        try:
            event.pose.require_rigid()
        except GbmrError as exc:
            return [self._error(exc)]
        self.anchor = event.pose
        if self.workflow is WorkflowKind.HEXNUT_JIG and self.calibration is not None:
            self.calibration = CalibrationSession(
                self.config.calibration_targets, event.pose)
        return [self._instruction("anchor pose updated")]

    # ------------------------------------------------------------ commands

    def _on_command(self, event: CommandEvent) -> list[SceneUpdate]:
        if event.name == "reset":
            return self._cmd_reset()
        if event.name == "undo_point":
            return self._cmd_undo()
        if event.name == "confirm":
            return self._cmd_confirm()
        if event.name == "select_workflow":
            return self._cmd_select_workflow(event.params)
        if event.name == "set_param":
            return self._cmd_set_param(event.params)
        return [self._error(GbmrError(f"unknown command {event.name!r}"))]

    def _cmd_reset(self) -> list[SceneUpdate]:
        self.points = []
        self.models = {}
        self.toolpaths = {}
        self.cut_confirmed = False
        self.anchor = None
        self.assignments = TubeAssignments()
        self.identifications = []
        self.calibration = self._fresh_calibration()
        self.qc_records = []
        self.detectors = {}
        return [self._instruction("session reset")]

    def _cmd_select_workflow(self, params: dict) -> list[SceneUpdate]:
        try:
            requested = WorkflowKind(params.get("workflow"))
        except ValueError:
            return [self._error(GbmrError(f"unknown workflow {params.get('workflow')!r}"))]
        if self.workflow is None:
            self.workflow = requested
            return [self._instruction(f"workflow {requested.value} selected")]
        if self.workflow is requested:
            return [self._instruction(f"workflow {requested.value} already active")]
        return [self._error(GbmrError(
            "one workflow per session; start a new session to switch"))]

    def _cmd_set_param(self, params: dict) -> list[SceneUpdate]:
        try:
            spec = self.config.board_spec
            if "board_count" in params:
                spec = BoardSpec(spec.min_width, spec.min_thickness,
                                 int(params["board_count"]))
            if "min_width" in params:
                spec = BoardSpec(float(params["min_width"]), spec.min_thickness,
                                 spec.board_count)
            if "min_thickness" in params:
                spec = BoardSpec(spec.min_width, float(params["min_thickness"]),
                                 spec.board_count)
            self.config.board_spec = spec
            if "clearance" in params:
                self.config.mount_clearance = float(params["clearance"])
            if "mounts" in params:
                self.config.mounts = [MountBox.from_dict(m) for m in params["mounts"]]
            self.config.params.update(params)
        except (GbmrError, KeyError, TypeError, ValueError) as exc:
            return [self._error(GbmrError(f"bad parameter: {exc}"))]
        return [self._instruction(f"parameters updated: {sorted(params)}")]

    def _cmd_confirm(self) -> list[SceneUpdate]:
        if self.workflow is not WorkflowKind.HALF_LOG_CUTTING:
            return [self._error(GbmrError("nothing to confirm in this workflow"))]
        placement = self.models.get("cut-1")
        validation = self.models.get("cut-1-validation")
        if placement is None or validation is None:
            return [self._error(GbmrError("place a cut anchor before confirming"))]
        if not validation.passed:
            return [self._error(GbmrError(
                "cut placement is not valid; adjust it before confirming"))]
        self.cut_confirmed = True
        toolpath = cut_toolpath(placement, validation,
                                metadata={"workflow": self.workflow.value,
                                          "source_log": "halflog-1"})
        self.toolpaths["toolpath-1"] = toolpath
        return [ToolpathReady(self._next_rev(), "toolpath-1",
                              toolpath.to_document())]

    def _cmd_undo(self) -> list[SceneUpdate]:
        if self.workflow not in POINT_WORKFLOWS or not self.points:
            return [self._instruction("nothing to undo")]
        self.points.pop()
        if self.workflow is WorkflowKind.TUBE_INDEX:
            # Undoing the closing point of a measured pair releases the tube.
            if len(self.points) % 2 == 1 and self.identifications:
                self.identifications.pop()
                self.assignments.undo_last()
        elif self.workflow is WorkflowKind.LAYER_TEMPLATE:
            if self.identifications:
                self.identifications.pop()
        elif self.workflow is WorkflowKind.PANEL_QC:
            if self.qc_records:
                self.qc_records.pop()
        else:
            self._rederive()
        return [self._instruction(
            f"last point removed; {len(self.points)} digitized point(s) remain")]

    # ------------------------------------------------------------ pinches

    def _on_pinch(self, pinch: PinchEvent) -> list[SceneUpdate]:
        if self.workflow is WorkflowKind.HEXNUT_JIG:
            return self._pinch_hexnut(pinch)
        if pinch.kind is not PinchKind.ENGAGED:
            return []
        point = pinch.point
        handler = {
            WorkflowKind.LOG_HALVING: self._point_log_halving,
            WorkflowKind.HALF_LOG_CUTTING: self._point_half_log_cutting,
            WorkflowKind.LAYER_TEMPLATE: self._point_layer_template,
            WorkflowKind.TUBE_INDEX: self._point_tube_index,
            WorkflowKind.PANEL_QC: self._point_panel_qc,
        }[self.workflow]
        return handler(point)

    # ------------------------------------------------- log halving workflow

    def _derive_log_halving(self, points: list[np.ndarray]) -> _Derived:
        models: dict[str, object] = {}
        toolpaths: dict[str, object] = {}
        problems: list[tuple[str, GbmrError]] = []
        if len(points) >= 3:
            models["circle-0"] = circumcircle(*points[0:3])
        if len(points) >= 6:
            models["circle-1"] = circumcircle(*points[3:6])
            cylinder = fit_cylinder(models["circle-0"], models["circle-1"])
            models["cylinder-1"] = cylinder
            try:
                surface = halving_surface(cylinder)
                models["surface-1"] = surface
                toolpaths["toolpath-1"] = halving_toolpath(
                    surface, metadata={"workflow": WorkflowKind.LOG_HALVING.value,
                                       "source_log": "cylinder-1"})
            except DegenerateGeometryError as exc:
                problems.append(("surface-1", exc))
        return _Derived(models, toolpaths, problems)

    def _point_log_halving(self, point: np.ndarray) -> list[SceneUpdate]:
        if len(self.points) >= 6:
            return [self._instruction(
                "log already digitized; undo or reset to re-place points")]
        candidate = self.points + [point]
        try:
            derived = self._derive_log_halving(candidate)
        except DegenerateGeometryError as exc:
            return [self._error(exc)]
        return self._commit_points(candidate, derived,
                                   point_id=f"point-{len(candidate)}",
                                   point=point)

    # ------------------------------------------- half log cutting workflow

    def _derive_half_log_cutting(self, points: list[np.ndarray]) -> _Derived:
        models: dict[str, object] = {}
        toolpaths: dict[str, object] = {}
        problems: list[tuple[str, GbmrError]] = []
        if len(points) >= 3:
            models["halflog-1"] = define_half_log(*points[0:3])
        if len(points) >= 4:
            placement = place_cut(models["halflog-1"], points[3],
                                  self.config.board_spec)
            models["cut-1"] = placement
            models["cut-1-validation"] = validate_cut(
                placement, models["halflog-1"], self.config.mounts,
                self.config.mount_clearance)
        return _Derived(models, toolpaths, problems)

    def _point_half_log_cutting(self, point: np.ndarray) -> list[SceneUpdate]:
        if len(self.points) >= 4:
            candidate = self.points[:3] + [point]   # re-place the cut anchor
        else:
            candidate = self.points + [point]
        try:
            derived = self._derive_half_log_cutting(candidate)
        except (DegenerateGeometryError, SnapDistanceError) as exc:
            return [self._error(exc)]
        self.cut_confirmed = False
        point_index = len(candidate)
        updates = self._commit_points(candidate, derived,
                                      point_id=f"point-{point_index}",
                                      point=point)
        validation = self.models.get("cut-1-validation")
        if len(candidate) >= 4 and validation is not None:
            updates.append(self._notation("cut-1", validation.notation))
            if validation.passed:
                updates.append(self._instruction(
                    "cut placement valid; confirm to emit the toolpath"))
        return updates

    # -------------------------------------------- identification workflows

    def _ground_plane(self) -> GroundPlane:
        if self.anchor is not None:
            return GroundPlane.from_anchor(self.anchor)
        return GroundPlane(point=[0.0, 0.0, 0.0], normal=[0.0, 0.0, 1.0])

    def _point_layer_template(self, point: np.ndarray) -> list[SceneUpdate]:
        if self.config.layer_catalog is None:
            return [self._error(GbmrError("no layer catalog loaded"))]
        try:
            result = identify_layer(point, self._ground_plane(),
                                    self.config.layer_catalog)
        except GbmrError as exc:
            return [self._error(exc),
                    self._instruction("re-measure the board top")]
        self.points.append(point)
        self.identifications.append(result.to_dict())
        return [self._geometry(f"point-{len(self.points)}",
                               _point_payload(point)),
                Identification(self._next_rev(), result.to_dict())]

    def _point_tube_index(self, point: np.ndarray) -> list[SceneUpdate]:
        if self.config.tube_catalog is None:
            return [self._error(GbmrError("no tube catalog loaded"))]
        self.points.append(point)
        updates: list[SceneUpdate] = [
            self._geometry(f"point-{len(self.points)}", _point_payload(point))]
        if len(self.points) % 2 == 1:
            updates.append(self._instruction("place a point at the other tube end"))
            return updates
        p1, p2 = self.points[-2], self.points[-1]
        try:
            result = identify_tube(p1, p2, self.config.tube_catalog,
                                   self.assignments)
        except GbmrError as exc:
            self.points.pop()
            self.points.pop()
            updates.append(self._error(exc))
            updates.append(self._instruction("re-measure both tube ends"))
            return updates
        self.identifications.append(result.to_dict())
        updates.append(Identification(self._next_rev(), result.to_dict()))
        return updates

    # ------------------------------------------------- calibration workflows

    def _pinch_hexnut(self, pinch: PinchEvent) -> list[SceneUpdate]:
        if self.calibration is None:
            return [self._error(GbmrError("no calibration job loaded"))]
        session = self.calibration
        if pinch.kind is PinchKind.ENGAGED:
            target = session.current_target
            if target is None:
                return [self._instruction("all locators are already placed")]
            return [self._instruction(f"adjust locator {target.target_id}")]
        if pinch.kind is PinchKind.MOVED:
            if session.current_target is None:
                return []
            subject = f"locator-{session.current_target.target_id}"
            notation = session.track(pinch)
            return [self._notation(subject, notation)]
        # released
        index = session.current_index
        target = session.current_target
        if target is None:
            return []
        subject = f"locator-{target.target_id}"
        notation = session.commit(pinch)
        updates = [self._notation(subject, notation)]
        if session.states[index].completed:
            _, advice = session.advance()
            updates.append(self._instruction(
                "all locators placed" if session.done else advice.message))
        return updates

    def _point_panel_qc(self, point: np.ndarray) -> list[SceneUpdate]:
        if self.config.qc_boards is None:
            return [self._error(GbmrError("no QC board list loaded"))]
        boards = self.config.qc_boards
        if self.anchor is not None:
            centers = apply_anchor(self.anchor,
                                   np.stack([c for _, c in boards]))
            boards = [(bid, centers[i]) for i, (bid, _) in enumerate(boards)]
        record = qc_board(point, boards, self.config.qc_tolerance)
        self.points.append(point)
        self.qc_records.append(record)
        return [self._geometry(f"point-{len(self.points)}", _point_payload(point)),
                self._notation(f"board-{record.board_id}", record.notation)]

    # --------------------------------------------------------- derivation

    def _rederive(self) -> None:
        derive = (self._derive_log_halving
                  if self.workflow is WorkflowKind.LOG_HALVING
                  else self._derive_half_log_cutting)
        derived = derive(self.points)
        self.models = derived.models
        self.toolpaths = derived.toolpaths
        if self.workflow is WorkflowKind.HALF_LOG_CUTTING:
            self.cut_confirmed = False

    def _commit_points(self, candidate: list[np.ndarray], derived: _Derived,
                       point_id: str, point: np.ndarray) -> list[SceneUpdate]:
        """Accept a validated point list and emit updates for what appeared."""
        old_models = self.models
        old_toolpaths = self.toolpaths
        self.points = candidate
        self.models = derived.models
        self.toolpaths = derived.toolpaths

        updates: list[SceneUpdate] = [self._geometry(point_id, _point_payload(point))]
        for key, model in derived.models.items():
            if key.endswith("-validation") or not hasattr(model, "to_dict"):
                continue   # validation is reported through its notation update
            unchanged = (key in old_models
                         and _model_content(old_models[key]) == _model_content(model))
            if not unchanged:
                updates.append(self._geometry(key, _model_payload(key, model)))
        for key, toolpath in derived.toolpaths.items():
            if key not in old_toolpaths:
                updates.append(ToolpathReady(self._next_rev(), key,
                                             toolpath.to_document()))
        for subject, exc in derived.problems:
            updates.append(self._error(exc))
        return updates


def _point_payload(point: np.ndarray) -> dict:
    return {"kind": "point", "position": [float(c) for c in point]}


def _model_payload(key: str, model) -> dict:
    payload = model.to_dict()
    payload["kind"] = _model_kind(key)
    return payload


def _model_kind(key: str) -> str:
    return key.rsplit("-", 1)[0]


def _model_content(model) -> dict:
    if hasattr(model, "to_dict"):
        return model.to_dict()
    return {"repr": repr(model)}
