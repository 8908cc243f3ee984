from .catalogs import (
    GroundPlane,
    LayerTemplate,
    TemplateCatalog,
    TubeEntry,
    TubeCatalog,
    load_catalog,
    validate_catalog,
)
from .matching import (
    IdentificationResult,
    TubeAssignments,
    identify_layer,
    identify_tube,
)

__all__ = [
    "GroundPlane",
    "LayerTemplate",
    "TemplateCatalog",
    "TubeEntry",
    "TubeCatalog",
    "load_catalog",
    "validate_catalog",
    "IdentificationResult",
    "TubeAssignments",
    "identify_layer",
    "identify_tube",
]
