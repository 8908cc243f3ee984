"""Red/yellow/green operator feedback badges.

Green always pairs with a check glyph and red with a cross; yellow keeps the
cross (the badge only turns into a tick once the tolerance is met). Distance
comparisons are inclusive at each boundary, so a deviation exactly at the
green tolerance still reads green.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..units import GREEN_TOLERANCE, YELLOW_TOLERANCE


class NotationColor(str, Enum):
    RED = "red"
    YELLOW = "yellow"
    GREEN = "green"


class NotationGlyph(str, Enum):
    CROSS = "cross"
    CHECK = "check"
    NONE = "none"


_REQUIRED_GLYPH = {NotationColor.GREEN: NotationGlyph.CHECK,
                   NotationColor.RED: NotationGlyph.CROSS}


@dataclass(frozen=True)
class NotationState:
    color: NotationColor
    glyph: NotationGlyph
    message: str = ""

    def __post_init__(self):
        required = _REQUIRED_GLYPH.get(self.color)
        if required is not None and self.glyph is not required:
            raise ValueError(
                f"{self.color.value} notation requires the {required.value} glyph"
            )
        if self.glyph is NotationGlyph.CHECK and self.color is not NotationColor.GREEN:
            raise ValueError("the check glyph is reserved for green notations")

    def to_dict(self) -> dict:
        return {"color": self.color.value, "glyph": self.glyph.value,
                "message": self.message}

    @classmethod
    def from_dict(cls, data: dict) -> "NotationState":
        return cls(color=NotationColor(data["color"]),
                   glyph=NotationGlyph(data["glyph"]),
                   message=data.get("message", ""))


def notation_for_distance(distance: float,
                          green_tolerance: float = GREEN_TOLERANCE,
                          yellow_tolerance: float = YELLOW_TOLERANCE,
                          message: str = "") -> NotationState:
    """Map a deviation to its badge; never 'worse' for a smaller distance."""
    if distance < 0.0:
        raise ValueError("distance must be >= 0")
    if not 0.0 < green_tolerance < yellow_tolerance:
        raise ValueError("need 0 < green tolerance < yellow tolerance")
    if distance <= green_tolerance:
        return NotationState(NotationColor.GREEN, NotationGlyph.CHECK, message)
    if distance <= yellow_tolerance:
        return NotationState(NotationColor.YELLOW, NotationGlyph.CROSS, message)
    return NotationState(NotationColor.RED, NotationGlyph.CROSS, message)


def pass_notation(message: str = "") -> NotationState:
    return NotationState(NotationColor.GREEN, NotationGlyph.CHECK, message)


def fail_notation(message: str = "") -> NotationState:
    return NotationState(NotationColor.RED, NotationGlyph.CROSS, message)


def info_notation(message: str = "") -> NotationState:
    return NotationState(NotationColor.YELLOW, NotationGlyph.NONE, message)
