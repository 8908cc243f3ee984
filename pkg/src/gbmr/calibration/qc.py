"""Point-based panel quality control against digital board locations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..transforms import RigidTransform, vec3
from ..units import GREEN_TOLERANCE
from .notation import NotationState, fail_notation, pass_notation

TIE_EPS = 1e-9


@dataclass
class BoardQCRecord:
    """One digitized check of a board's finger-joint center."""

    point: np.ndarray
    board_id: str
    reference: np.ndarray
    deviation: float
    tolerance: float
    verdict: str                  # "pass" | "fail"
    notation: NotationState

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {"point": [float(c) for c in self.point],
                "board_id": self.board_id,
                "reference": [float(c) for c in self.reference],
                "deviation": float(self.deviation),
                "tolerance": float(self.tolerance),
                "verdict": self.verdict,
                "notation": self.notation.to_dict()}


def qc_board(point, boards: list[tuple[str, np.ndarray]],
             tolerance: float = GREEN_TOLERANCE) -> BoardQCRecord:
    """Check a digitized point against the closest digital board.

    ``boards`` maps ids to finger-joint centers. The nearest center wins;
    a tie within 1e-9 m resolves to the lowest id so the result is
    deterministic. The verdict is inclusive at the tolerance.
    """
    if not boards:
        raise ValueError("board list must not be empty")
    p = vec3(point)
    scored = []
    for board_id, center in boards:
        center = vec3(center)
        delta = p - center
        scored.append((str(board_id), center, math.sqrt(float(delta @ delta))))
    min_dist = min(d for _, _, d in scored)
    best_id, best_ref, best_dist = min(
        (item for item in scored if item[2] - min_dist <= TIE_EPS),
        key=lambda item: item[0],
    )
    passed = best_dist <= tolerance
    notation = (pass_notation(f"board {best_id}: {best_dist * 1000:.2f} mm deviation")
                if passed else
                fail_notation(f"board {best_id}: {best_dist * 1000:.2f} mm exceeds tolerance"))
    return BoardQCRecord(point=p, board_id=best_id, reference=best_ref,
                         deviation=best_dist, tolerance=tolerance,
                         verdict="pass" if passed else "fail",
                         notation=notation)


def apply_anchor(anchor: RigidTransform, model_points) -> np.ndarray:
    """Express model-frame goal geometry in world frame via the anchor pose.

    Re-anchoring replaces the previous alignment: callers must always pass
    the original model-frame points, never previously transformed ones.
    """
    anchor.require_rigid()
    return anchor.apply(np.asarray(model_points, dtype=float))


def qc_report(records: list[BoardQCRecord]) -> list[dict]:
    """QC report payload: a JSON-ready list, one record per checked board."""
    return [r.to_dict() for r in records]
