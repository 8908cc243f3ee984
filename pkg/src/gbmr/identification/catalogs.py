"""Predefined digital catalogs matched against gestural measurements.

Catalog files are JSON with a declared unit ("m" or "in"); the loader
converts every length to meters and refuses catalogs whose nominal values
sit too close together to classify unambiguously.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import CatalogError
from ..transforms import RigidTransform, normalized, vec3
from ..units import LAYER_TOLERANCE, TUBE_TOLERANCE, convert_length


@dataclass
class GroundPlane:
    """Reference plane heights are measured from (set by the anchor pose)."""

    point: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        self.point = vec3(self.point)
        self.normal = normalized(vec3(self.normal))

    def height_of(self, p) -> float:
        return float((vec3(p) - self.point) @ self.normal)

    @classmethod
    def from_anchor(cls, anchor: RigidTransform) -> "GroundPlane":
        """Plane through the anchor origin, up along the anchor's local Z."""
        from ..transforms import rotate

        return cls(point=anchor.position,
                   normal=rotate(anchor.quaternion, [0.0, 0.0, 1.0]))


@dataclass
class LayerTemplate:
    """Finger-joint template for one board layer."""

    layer: int
    height: float                      # nominal height above ground, m
    outline: list[tuple[float, float]]  # closed planar polyline, template frame
    holes: list[tuple[float, float]]    # threaded-rod hole centers
    label: str = ""

    def __post_init__(self):
        if self.height < 0.0:
            raise ValueError("template height must be >= 0")
        self.outline = [(float(x), float(y)) for x, y in self.outline]
        self.holes = [(float(x), float(y)) for x, y in self.holes]

    def to_dict(self) -> dict:
        return {"layer": self.layer, "height": self.height,
                "outline": [list(p) for p in self.outline],
                "holes": [list(p) for p in self.holes],
                "label": self.label}


@dataclass
class TemplateCatalog:
    layers: list[LayerTemplate]
    tolerance: float = LAYER_TOLERANCE

    def __post_init__(self):
        self.layers = sorted(self.layers, key=lambda t: t.height)

    @property
    def nominals(self) -> list[float]:
        return [t.height for t in self.layers]


@dataclass
class TubeEntry:
    """One steel tube: nominal length plus where it belongs."""

    tube_id: str
    length: float
    frame: int                         # reciprocal frame 1..3
    frame_pose: RigidTransform
    tower_pose: RigidTransform

    def __post_init__(self):
        if not self.length > 0.0:
            raise ValueError("tube length must be > 0")
        if self.frame not in (1, 2, 3):
            raise ValueError(f"frame id must be 1, 2, or 3, got {self.frame}")

    def to_dict(self) -> dict:
        return {"id": self.tube_id, "length": self.length, "frame": self.frame,
                "frame_pose": self.frame_pose.to_dict(),
                "tower_pose": self.tower_pose.to_dict()}


@dataclass
class TubeCatalog:
    entries: list[TubeEntry]
    tolerance: float = TUBE_TOLERANCE
    expected_total: int | None = None
    expected_unique_lengths: int | None = None

    @property
    def nominals(self) -> list[float]:
        return sorted(set(e.length for e in self.entries))

    def entries_of_length(self, nominal: float) -> list[TubeEntry]:
        return sorted((e for e in self.entries if e.length == nominal),
                      key=lambda e: e.tube_id)


def validate_catalog(catalog) -> list[str]:
    """Collect catalog violations; an empty list means the catalog passes.

    Checks the unambiguous-match guarantee (adjacent nominal gaps must
    exceed twice the tolerance), id uniqueness, and any declared counts.
    """
    violations: list[str] = []
    if isinstance(catalog, TemplateCatalog):
        items = catalog.layers
        ids = [t.layer for t in items]
        nominals = [t.height for t in items]
        for t in items:
            if len(t.outline) < 3:
                violations.append(
                    f"layer {t.layer}: outline needs at least 3 points to close"
                )
    elif isinstance(catalog, TubeCatalog):
        items = catalog.entries
        ids = [e.tube_id for e in items]
        nominals = catalog.nominals
        if catalog.expected_total is not None and len(items) != catalog.expected_total:
            violations.append(
                f"expected {catalog.expected_total} entries, found {len(items)}"
            )
        if (catalog.expected_unique_lengths is not None
                and len(nominals) != catalog.expected_unique_lengths):
            violations.append(
                f"expected {catalog.expected_unique_lengths} unique lengths, "
                f"found {len(nominals)}"
            )
    else:
        raise TypeError(f"not a catalog: {type(catalog).__name__}")

    if not items:
        violations.append("catalog has no entries")
        return violations
    if len(set(ids)) != len(ids):
        violations.append("duplicate ids in catalog")
    if catalog.tolerance <= 0.0:
        violations.append("tolerance must be > 0")
    ordered = sorted(set(nominals))
    for a, b in zip(ordered, ordered[1:]):
        if b - a <= 2.0 * catalog.tolerance:
            violations.append(
                f"nominal values {a} and {b} differ by {b - a:.6f} m, "
                f"within twice the {catalog.tolerance} m tolerance"
            )
    return violations


def _load_tube_catalog(data: dict) -> TubeCatalog:
    unit = data.get("unit", "m")
    entries = []
    for e in data["entries"]:
        entries.append(TubeEntry(
            tube_id=str(e["id"]),
            length=convert_length(e["length"], unit),
            frame=int(e["frame"]),
            frame_pose=RigidTransform.from_dict(e["frame_pose"]),
            tower_pose=RigidTransform.from_dict(e["tower_pose"]),
        ))
    return TubeCatalog(
        entries=entries,
        tolerance=convert_length(data["tolerance"], unit) if "tolerance" in data
        else TUBE_TOLERANCE,
        expected_total=data.get("expected_total"),
        expected_unique_lengths=data.get("expected_unique_lengths"),
    )


def _load_layer_catalog(data: dict) -> TemplateCatalog:
    unit = data.get("unit", "m")
    layers = []
    for e in data["layers"]:
        layers.append(LayerTemplate(
            layer=int(e["layer"]),
            height=convert_length(e["height"], unit),
            outline=[(convert_length(x, unit), convert_length(y, unit))
                     for x, y in e["outline"]],
            holes=[(convert_length(x, unit), convert_length(y, unit))
                   for x, y in e.get("holes", [])],
            label=e.get("label", ""),
        ))
    return TemplateCatalog(
        layers=layers,
        tolerance=convert_length(data["tolerance"], unit) if "tolerance" in data
        else LAYER_TOLERANCE,
    )


def load_catalog(path: str | Path):
    """Load and validate a catalog file; dispatches on its "kind" field."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path.name} is not valid JSON: {exc}") from exc
    kind = data.get("kind")
    try:
        if kind == "tube_catalog":
            catalog = _load_tube_catalog(data)
        elif kind == "layer_catalog":
            catalog = _load_layer_catalog(data)
        else:
            raise CatalogError(f"{path.name}: unknown catalog kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"{path.name} malformed: {exc}") from exc
    violations = validate_catalog(catalog)
    if violations:
        raise CatalogError(f"{path.name}: " + "; ".join(violations))
    return catalog
