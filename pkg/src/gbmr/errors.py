"""Exception hierarchy shared by all engine modules.

Every error carries a short machine-parsable ``code`` used by the wire
protocol and the CLI; the message is for the operator.
"""

from __future__ import annotations


class GbmrError(Exception):
    """Base class for engine errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DegenerateGeometryError(GbmrError):
    """A fit is underdetermined; the operator must re-place a point."""

    code = "degenerate_geometry"


class OutOfOrderFrameError(GbmrError):
    """Frame or event timestamp went backwards for its stream."""

    code = "out_of_order"


class SnapDistanceError(GbmrError):
    """A digitized point is too far from the body it must snap to."""

    code = "snap_distance"


class NoMatchError(GbmrError):
    """No catalog entry within tolerance of the measurement."""

    code = "no_match"


class AmbiguousMatchError(GbmrError):
    """More than one catalog entry within tolerance (invalid catalog)."""

    code = "ambiguous_match"


class AllAssignedError(GbmrError):
    """Every instance of the matched nominal is already assigned."""

    code = "all_assigned"


class BelowGroundError(GbmrError):
    """Measured point lies below the established ground plane."""

    code = "below_ground"


class CatalogError(GbmrError):
    """Catalog or job file failed validation or parsing."""

    code = "catalog_invalid"


class NonRigidTransformError(GbmrError):
    """An anchor pose is not a valid rigid transform."""

    code = "non_rigid_transform"


class ProtocolError(GbmrError):
    """Malformed or out-of-contract wire message."""

    code = "protocol"


class WorkflowError(GbmrError):
    """Event does not fit the active workflow phase."""

    code = "workflow"
