"""Per-session configuration: workflow, detector tuning, and loaded data files."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..calibration.session import CalibrationTarget, load_calibration_job
from ..errors import CatalogError
from ..geometry.cuts import BoardSpec
from ..geometry.primitives import MountBox
from ..hand_tracking.pinch import PinchDetectorConfig
from ..identification.catalogs import (
    TemplateCatalog,
    TubeCatalog,
    load_catalog,
    validate_catalog,
)
from ..transforms import RigidTransform, vec3
from ..units import GREEN_TOLERANCE, MOUNT_CLEARANCE, convert_length
from .wire import WorkflowKind


def _infer_kind(data: dict) -> str:
    if "kind" in data:
        return data["kind"]
    if "entries" in data:
        return "tube_catalog"
    if "layers" in data:
        return "layer_catalog"
    if "targets" in data:
        return "calibration_job"
    if "boards" in data:
        return "qc_boards"
    raise CatalogError("cannot determine data file kind")


def load_qc_boards(data: dict) -> tuple[list[tuple[str, np.ndarray]], float]:
    unit = data.get("unit", "m")
    boards = [(str(b["id"]), vec3([convert_length(c, unit) for c in b["center"]]))
              for b in data["boards"]]
    if not boards:
        raise CatalogError("qc board file has no boards")
    tolerance = (convert_length(data["tolerance"], unit)
                 if "tolerance" in data else GREEN_TOLERANCE)
    return boards, tolerance


def load_data_file(path: str | Path) -> tuple[str, object]:
    """Load any session data file; returns (kind, payload)."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path.name} is not valid JSON: {exc}") from exc
    kind = _infer_kind(data)
    if kind in ("tube_catalog", "layer_catalog"):
        data.setdefault("kind", kind)
        return kind, load_catalog(path)
    if kind == "calibration_job":
        return kind, load_calibration_job(path)
    if kind == "qc_boards":
        return kind, load_qc_boards(data)
    raise CatalogError(f"{path.name}: unknown data file kind {kind!r}")


@dataclass
class SessionConfig:
    workflow: WorkflowKind | None = None
    pinch: PinchDetectorConfig = field(default_factory=PinchDetectorConfig)
    tube_catalog: TubeCatalog | None = None
    layer_catalog: TemplateCatalog | None = None
    calibration_targets: list[CalibrationTarget] | None = None
    calibration_anchor: RigidTransform | None = None
    qc_boards: list[tuple[str, np.ndarray]] | None = None
    qc_tolerance: float = GREEN_TOLERANCE
    board_spec: BoardSpec = field(default_factory=BoardSpec)
    mount_clearance: float = MOUNT_CLEARANCE
    mounts: list[MountBox] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def attach(self, kind: str, payload) -> None:
        if kind == "tube_catalog":
            self.tube_catalog = payload
        elif kind == "layer_catalog":
            self.layer_catalog = payload
        elif kind == "calibration_job":
            self.calibration_targets, self.calibration_anchor = payload
        elif kind == "qc_boards":
            self.qc_boards, self.qc_tolerance = payload
        else:
            raise CatalogError(f"unknown data kind {kind!r}")

    @classmethod
    def from_files(cls, workflow: str | WorkflowKind | None,
                   data_paths: list[str | Path] | None = None,
                   pinch: PinchDetectorConfig | None = None) -> "SessionConfig":
        config = cls(workflow=WorkflowKind(workflow) if workflow else None)
        if pinch is not None:
            config.pinch = pinch
        for p in data_paths or []:
            config.attach(*load_data_file(p))
        return config

    def copy(self) -> "SessionConfig":
        """Independent copy so one served session cannot leak set_param
        changes into another."""
        return copy.deepcopy(self)
