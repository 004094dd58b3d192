"""Exact symbolic toolkit for Danielewski surfaces xy = p(z)."""
from .certificate import Certificate
from .errors import (
    CapError,
    DanielewskiError,
    DegreeError,
    InputError,
    MoveError,
    ParseError,
    ResidueError,
    SimpleZerosError,
    ValidationError,
)
from .surface import SurfaceDef, SurfaceElem, normal_form
from .vfield import (
    Family1,
    Family2,
    Family3,
    VectorField,
    bracket,
    build_family,
    flow_of,
    generators,
    is_tangent,
    preserves_fibration,
)

__version__ = "0.1.0"

__all__ = [
    "CapError",
    "Certificate",
    "DanielewskiError",
    "DegreeError",
    "Family1",
    "Family2",
    "Family3",
    "InputError",
    "MoveError",
    "ParseError",
    "ResidueError",
    "SimpleZerosError",
    "SurfaceDef",
    "SurfaceElem",
    "ValidationError",
    "VectorField",
    "bracket",
    "build_family",
    "flow_of",
    "generators",
    "is_tangent",
    "normal_form",
    "preserves_fibration",
]
