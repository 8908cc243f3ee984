"""Classify gestural measurements against loaded catalogs.

Matching is inclusive at the tolerance: a deviation exactly equal to the
tolerance still matches. Valid catalogs guarantee at most one nominal can
match any measurement; the ambiguous case is still checked defensively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import (
    AllAssignedError,
    AmbiguousMatchError,
    BelowGroundError,
    NoMatchError,
)
from ..transforms import plane_basis, vec3
from .catalogs import GroundPlane, TemplateCatalog, TubeCatalog

TOWER_SCALE_HINT = 0.1


@dataclass
class IdentificationResult:
    """A successful catalog match plus its coordination payload."""

    kind: str                      # "layer" | "tube"
    entry_id: str
    measured: float
    deviation: float
    notation_text: str
    payload: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "entry_id": self.entry_id,
                "measured": self.measured, "deviation": self.deviation,
                "notation_text": self.notation_text, "payload": self.payload}


@dataclass
class TubeAssignments:
    """Which tube instances have already been identified and installed."""

    assigned: set[str] = field(default_factory=set)
    history: list[str] = field(default_factory=list)

    def assign(self, tube_id: str) -> None:
        self.assigned.add(tube_id)
        self.history.append(tube_id)

    def undo_last(self) -> str | None:
        if not self.history:
            return None
        last = self.history.pop()
        self.assigned.discard(last)
        return last

    def content(self) -> list[str]:
        return sorted(self.assigned)


def match_nominal(measured: float, nominals: list[float], tolerance: float) -> float:
    """The unique nominal within tolerance of the measurement.

    Plain linear scan; catalog validation already guarantees gaps wide
    enough that at most one nominal can qualify.
    """
    hits = [n for n in nominals if abs(measured - n) <= tolerance]
    if not hits:
        nearest = min(nominals, key=lambda n: abs(measured - n)) if nominals else None
        raise NoMatchError(
            f"measured {measured:.4f} m matches no nominal within "
            f"{tolerance:.4f} m (nearest {nearest}); re-measure"
        )
    if len(hits) > 1:
        raise AmbiguousMatchError(
            f"measured {measured:.4f} m matches {len(hits)} nominal values; "
            "the catalog gaps are too small"
        )
    return hits[0]


def identify_layer(point, ground: GroundPlane,
                   catalog: TemplateCatalog) -> IdentificationResult:
    """Match a board-top point to its layer template by height above ground.

    The returned payload carries the template geometry lifted to the
    measured height so the UI can draw it on the physical board.
    """
    p = vec3(point)
    height = ground.height_of(p)
    if height < 0.0:
        raise BelowGroundError(
            f"measured point sits {-height:.4f} m below the ground plane"
        )
    nominal = match_nominal(height, catalog.nominals, catalog.tolerance)
    template = next(t for t in catalog.layers if t.height == nominal)
    u, v = plane_basis(ground.normal)
    lift = ground.point + height * ground.normal
    outline_world = [(lift + x * u + y * v) for x, y in template.outline]
    holes_world = [(lift + x * u + y * v) for x, y in template.holes]
    deviation = abs(height - nominal)
    return IdentificationResult(
        kind="layer",
        entry_id=str(template.layer),
        measured=height,
        deviation=deviation,
        notation_text=template.label or f"layer {template.layer}",
        payload={
            "layer": template.layer,
            "board_top_height": height,
            "outline_world": [[float(c) for c in p3] for p3 in outline_world],
            "holes_world": [[float(c) for c in p3] for p3 in holes_world],
        },
    )


def identify_tube(p1, p2, catalog: TubeCatalog,
                  assignments: TubeAssignments) -> IdentificationResult:
    """Match a pinched tube length and hand out the next free instance.

    The instance chosen is the lowest-id entry of the matched length not yet
    assigned; it is recorded in ``assignments`` so repeat measurements walk
    through the physical stock deterministically.
    """
    p1, p2 = vec3(p1), vec3(p2)
    delta = p2 - p1
    length = math.sqrt(float(delta @ delta))
    if length <= 0.0:
        raise ValueError("tube end points coincide")
    nominal = match_nominal(length, catalog.nominals, catalog.tolerance)
    free = [e for e in catalog.entries_of_length(nominal)
            if e.tube_id not in assignments.assigned]
    if not free:
        raise AllAssignedError(
            f"every {nominal:.4f} m tube is already assigned; "
            "check the stock or undo an identification"
        )
    entry = free[0]
    assignments.assign(entry.tube_id)
    deviation = abs(length - nominal)
    return IdentificationResult(
        kind="tube",
        entry_id=entry.tube_id,
        measured=length,
        deviation=deviation,
        notation_text=f"tube {entry.tube_id} ({nominal:.3f} m, frame {entry.frame})",
        payload={
            "tube_id": entry.tube_id,
            "frame": entry.frame,
            "frame_pose": entry.frame_pose.to_dict(),
            "tower_pose": entry.tower_pose.to_dict(),
            "scale_hint": TOWER_SCALE_HINT,
        },
    )
