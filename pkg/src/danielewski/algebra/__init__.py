from .parse import parse_poly
from .poly import (
    DEFAULT,
    LaurentPoly,
    MultiPoly,
    Registry,
    as_fraction,
    divmod_in_var,
    substitute,
)
from .resultant import bareiss_det, discriminant, resultant, sylvester_matrix
from .upoly import UniPoly, has_simple_zeros, squarefree_part, uni_gcd

__all__ = [
    "DEFAULT",
    "LaurentPoly",
    "MultiPoly",
    "Registry",
    "UniPoly",
    "as_fraction",
    "bareiss_det",
    "discriminant",
    "divmod_in_var",
    "has_simple_zeros",
    "parse_poly",
    "resultant",
    "squarefree_part",
    "substitute",
    "sylvester_matrix",
    "uni_gcd",
]


def P(text: str, registry: Registry = DEFAULT) -> MultiPoly:
    """Shorthand for :func:`parse_poly`."""
    return parse_poly(text, registry)


def U(text: str, var: str = "z") -> UniPoly:
    """Parse a univariate polynomial in ``var``."""
    return UniPoly.from_multi(parse_poly(text, DEFAULT.extend(var)), var)
