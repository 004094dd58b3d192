"""The classified fibration shapes on a Danielewski surface."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..algebra import DEFAULT, MultiPoly, UniPoly, as_fraction, parse_poly
from ..errors import InputError
from ..surface import SurfaceDef, SurfaceElem, normal_form


def _uni(value, var: str) -> UniPoly:
    if isinstance(value, UniPoly):
        if value.degree > 0 and value.var != var:
            raise InputError(f"expected a polynomial in {var}, got one in {value.var}")
        return UniPoly(value.coeffs, var)
    if isinstance(value, MultiPoly):
        return UniPoly.from_multi(value, var)
    if isinstance(value, (int, Fraction)):
        return UniPoly([value], var)
    if isinstance(value, str):
        return UniPoly.from_multi(parse_poly(value, DEFAULT.extend(var)), var)
    raise InputError(f"cannot read {value!r} as a polynomial in {var}")


@dataclass(frozen=True)
class CoordX:
    """f = x (the C-fibration)."""

    def to_json(self):
        return {"kind": "CoordX"}


@dataclass(frozen=True)
class CoordZ:
    """f = z (C*-fibration with two sections, singular fibers over the roots of p)."""

    def to_json(self):
        return {"kind": "CoordZ"}


@dataclass(frozen=True)
class TwoSection:
    """f = x^m (x^l (z + a) + Q(x))^n with gcd(m, n) = 1 and deg Q < l."""

    m: int = 1
    n: int = 1
    l: int = 0
    a: Fraction = Fraction(0)
    Q: UniPoly = UniPoly([], "x")

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "Q", _uni(self.Q, "x"))
        if self.m < 1 or self.n < 1:
            raise InputError("m and n must be positive")
        if gcd(self.m, self.n) != 1:
            raise InputError(f"m={self.m} and n={self.n} are not coprime")
        if self.l < 0:
            raise InputError("l must be non-negative")
        if self.Q.degree >= self.l:
            raise InputError(f"deg Q = {self.Q.degree} must be < l = {self.l}")

    def poly(self, registry=DEFAULT) -> MultiPoly:
        x = MultiPoly.var("x", registry)
        z = MultiPoly.var("z", registry)
        inner = x ** self.l * (z + self.a) + self.Q.to_multi(registry)
        return x ** self.m * inner ** self.n

    def to_json(self):
        return {
            "kind": "TwoSection",
            "m": self.m,
            "n": self.n,
            "l": self.l,
            "a": str(self.a),
            "Q": str(self.Q),
        }


@dataclass(frozen=True)
class DoubleSection:
    """f = a x + y + p''(z)/6 with a the leading coefficient of p (deg p = 4)."""

    def to_json(self):
        return {"kind": "DoubleSection"}


FibrationSpec = CoordX | CoordZ | TwoSection | DoubleSection


def leading_coefficient(surface: SurfaceDef) -> Fraction:
    lc = surface.p.collect("z")[surface.k]
    if not lc.is_constant():
        raise InputError("leading coefficient of p must be a number here")
    return lc.constant_value()


def as_surface_elem(spec, surface: SurfaceDef) -> SurfaceElem:
    """The regular function defining ``spec`` as an element of C[S]."""
    reg = surface.registry
    if isinstance(spec, CoordX):
        return surface.x
    if isinstance(spec, CoordZ):
        return surface.z
    if isinstance(spec, TwoSection):
        return normal_form(spec.poly(reg), surface)
    if isinstance(spec, DoubleSection):
        if surface.k != 4:
            raise InputError(f"the double-section fibration needs deg p = 4, got {surface.k}")
        a = leading_coefficient(surface)
        f = a * MultiPoly.var("x", reg) + MultiPoly.var("y", reg) + surface.p.derivative("z").derivative("z") / 6
        return normal_form(f, surface)
    raise InputError(f"unknown fibration {spec!r}")


def fibration_from_json(data) -> FibrationSpec:
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "CoordX":
        return CoordX()
    if kind == "CoordZ":
        return CoordZ()
    if kind == "DoubleSection":
        return DoubleSection()
    if kind == "TwoSection":
        try:
            return TwoSection(
                m=int(data.get("m", 1)),
                n=int(data.get("n", 1)),
                l=int(data.get("l", 0)),
                a=as_fraction(str(data.get("a", 0))),
                Q=_uni(str(data.get("Q", "0")), "x"),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad TwoSection parameters: {exc}") from exc
    raise InputError(f"unknown fibration kind {kind!r}")
