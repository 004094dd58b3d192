"""The coordinate ring C[S] = C[x,y,z]/(xy - p(z)).

Every element is kept in the normal form spanned by ``x^a z^c`` (a >= 0)
and ``y^b z^c`` (b >= 1); parameter variables ride along as coefficients.
"""
from __future__ import annotations

from numbers import Rational
from typing import NamedTuple

from .algebra import (
    DEFAULT,
    LaurentPoly,
    MultiPoly,
    UniPoly,
    divmod_in_var,
    parse_poly,
    uni_gcd,
)
from .errors import InputError, SimpleZerosError

_X, _Y = 0, 1  # positions of x and y in every registry used here


class Membership(NamedTuple):
    """Outcome of a membership test: exactly one of the fields is set."""

    element: "SurfaceElem | None"
    witness: object = None

    def __bool__(self):
        return self.element is not None


class SurfaceDef:
    """A Danielewski surface ``xy = p(z)``.

    ``p`` may carry parameter coefficients, in which case the simple-zeros
    check is skipped (it holds only generically).  ``relations`` is a tuple
    of ``(var, power, replacement)`` rewrites for parameters, e.g. the
    ``xi^2 -> alpha + b^2/2 - c`` rule of the degree-4 mode.
    """

    def __init__(self, p, *, relations=(), registry=DEFAULT):
        if isinstance(p, str):
            p = parse_poly(p, registry)
        elif isinstance(p, UniPoly):
            if p.var != "z":
                raise InputError("p must be a polynomial in z")
            p = p.to_multi(registry)
        if registry.names[:3] != ("x", "y", "z"):
            raise InputError("registry must start with x, y, z")
        self.registry = registry.join(p.registry)
        p = p.with_registry(self.registry)
        if {"x", "y"} & p.variables():
            raise InputError("p must not involve x or y")
        self.p = p
        self.k = p.degree("z")
        if self.k < 2:
            raise InputError(f"deg p must be >= 2, got {self.k}")
        self.params = sorted(p.variables() - {"z"})
        self.relations = tuple(relations)
        self._check_simple_zeros()
        self.dp = p.derivative("z")
        self._ppow = [MultiPoly.const(1, self.registry)]

    def _check_simple_zeros(self):
        if self.params:
            return
        up = UniPoly.from_multi(self.p, "z")
        g = uni_gcd(up, up.derivative())
        if g.degree > 0:
            raise SimpleZerosError(f"p = {self.p} has a multiple zero: gcd(p, p') = {g}", g)

    @property
    def p_uni(self) -> UniPoly:
        return UniPoly.from_multi(self.p, "z")

    def p_power(self, n: int) -> MultiPoly:
        while len(self._ppow) <= n:
            self._ppow.append(self._ppow[-1] * self.p)
        return self._ppow[n]

    def with_relations(self, *relations) -> SurfaceDef:
        return SurfaceDef(self.p, relations=self.relations + tuple(relations), registry=self.registry)

    def __eq__(self, other):
        return (
            isinstance(other, SurfaceDef)
            and self.p == other.p
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.p, self.relations))

    def __repr__(self):
        return f"SurfaceDef(xy = {self.p})"

    # -- element construction ---------------------------------------------
    def var(self, name: str) -> SurfaceElem:
        return SurfaceElem(MultiPoly.var(name, self.registry), self)

    def const(self, value) -> SurfaceElem:
        return SurfaceElem(MultiPoly.const(value, self.registry), self)

    def __call__(self, f) -> SurfaceElem:
        return normal_form(f, self)

    @property
    def x(self):
        return self.var("x")

    @property
    def y(self):
        return self.var("y")

    @property
    def z(self):
        return self.var("z")


def _reduce(f: MultiPoly, surface: SurfaceDef) -> MultiPoly:
    f = f.with_registry(surface.registry.join(f.registry)) if f.registry != surface.registry else f
    buckets = {}
    for m, c in f.terms.items():
        i = m[_X] if len(m) > _X else 0
        j = m[_Y] if len(m) > _Y else 0
        k = min(i, j)
        if k:
            m = list(m)
            m[_X] -= k
            m[_Y] -= k
            m = tuple(m)
        buckets.setdefault(k, {})[m] = c
    out = MultiPoly.const(0, f.registry)
    for k, terms in buckets.items():
        part = MultiPoly(terms, f.registry)
        out = out + (part * surface.p_power(k) if k else part)
    for var, power, repl in surface.relations:
        out = out.reduce_power(var, power, repl)
    return out


def normal_form(f, surface: SurfaceDef) -> SurfaceElem:
    """Canonical representative of ``f`` in C[S]."""
    if isinstance(f, SurfaceElem):
        if f.surface != surface:
            raise InputError("element belongs to a different surface")
        return f
    if isinstance(f, str):
        f = parse_poly(f, surface.registry)
    elif isinstance(f, (int, Rational)):
        f = MultiPoly.const(f, surface.registry)
    elif isinstance(f, UniPoly):
        f = f.to_multi(surface.registry)
    return SurfaceElem(_reduce(f, surface), surface, _trusted=True)


class SurfaceElem:
    """An element of C[S] in normal form."""

    __slots__ = ("poly", "surface")

    def __init__(self, poly: MultiPoly, surface: SurfaceDef, _trusted=False):
        self.surface = surface
        self.poly = poly if _trusted else _reduce(poly, surface)

    def _coerce(self, other):
        if isinstance(other, SurfaceElem):
            if other.surface != self.surface:
                raise InputError("surface mismatch")
            return other
        if isinstance(other, (int, Rational, MultiPoly)):
            return normal_form(other, self.surface)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SurfaceElem(self.poly + other.poly, self.surface, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return SurfaceElem(-self.poly, self.surface, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SurfaceElem(self.poly - other.poly, self.surface, _trusted=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SurfaceElem(_reduce(self.poly * other.poly, self.surface), self.surface, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SurfaceElem(self.poly / scalar, self.surface, _trusted=True)

    def __pow__(self, n: int):
        result = self.surface.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except InputError:
            return False
        if other is None:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return not self.poly

    @property
    def pure_x_part(self) -> MultiPoly:
        """Terms ``x^i z^c`` (i >= 0)."""
        return MultiPoly(
            {m: c for m, c in self.poly.terms.items() if len(m) <= _Y or m[_Y] == 0},
            self.poly.registry,
        )

    @property
    def pure_y_part(self) -> MultiPoly:
        """Terms ``y^j z^c`` (j >= 1)."""
        return MultiPoly(
            {m: c for m, c in self.poly.terms.items() if len(m) > _Y and m[_Y] > 0},
            self.poly.registry,
        )

    def derivative(self, var: str) -> MultiPoly:
        """Partial derivative of the normal-form lift (not renormalised)."""
        return self.poly.derivative(var)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"SurfaceElem({self.poly})"


def _divide_once(f: SurfaceElem) -> Membership:
    s = f.surface
    xparts = f.poly.collect("x")
    base = xparts.pop(0, MultiPoly.const(0, s.registry))
    q, r = divmod_in_var(base, s.p, "z")
    if r:
        return Membership(None, r)
    x = MultiPoly.var("x", s.registry)
    shifted = MultiPoly.const(0, s.registry)
    for e, coeff in xparts.items():
        shifted = shifted + coeff * x ** (e - 1)
    # base = q * p(z) = q * x * y
    quotient = shifted + q * MultiPoly.var("y", s.registry)
    return Membership(SurfaceElem(quotient, s))


def divisible_by_x_power(f: SurfaceElem, j: int) -> Membership:
    """Find g with x^j * g = f in C[S].

    On failure ``witness`` is ``(step, remainder)``: the image of the
    partial quotient modulo (x, p(z)) at the step where division stopped.
    """
    if j < 1:
        raise InputError("j must be a positive integer")
    cur = f
    for step in range(1, j + 1):
        res = _divide_once(cur)
        if not res:
            return Membership(None, (step, res.witness))
        cur = res.element
    return Membership(cur)


def image_in_localization(f: SurfaceElem) -> LaurentPoly:
    """Embed C[S] into C[x^{+-1}, z] via y -> p(z)/x."""
    s = f.surface
    y_img = LaurentPoly(s.p) * LaurentPoly.monomial({"x": -1}, registry=s.registry)
    return _subst_y(f.poly, y_img)


def _subst_y(poly: MultiPoly, y_img: LaurentPoly) -> LaurentPoly:
    total = LaurentPoly(MultiPoly.const(0, poly.registry))
    for e, coeff in poly.collect("y").items():
        total = total + coeff * (y_img ** e)
    return total


def localized_member(g, surface: SurfaceDef) -> Membership:
    """Pull ``g = sum a_i(z) x^i`` (i in Z) back to C[S] when possible.

    On failure ``witness`` is ``(i, remainder)`` for the first negative
    power whose coefficient is not divisible by p(z)^(-i).
    """
    if isinstance(g, MultiPoly):
        g = LaurentPoly(g)
    if "y" in g.num.variables():
        raise InputError("localized elements must not involve y")
    reg = surface.registry.join(g.registry)
    y = MultiPoly.var("y", reg)
    x = MultiPoly.var("x", reg)
    acc = MultiPoly.const(0, reg)
    for i, coeff in sorted(g.collect("x").items()):
        if not coeff.is_polynomial():
            raise InputError("only x may appear in a denominator")
        a = coeff.num
        if i >= 0:
            acc = acc + a * x ** i
            continue
        q, r = divmod_in_var(a, surface.p_power(-i), "z")
        if r:
            return Membership(None, (i, r))
        acc = acc + q * y ** (-i)
    return Membership(SurfaceElem(acc, surface))


def apply_derivation(nu, f) -> SurfaceElem:
    """nu(f) = nu_x df/dx + nu_y df/dy + nu_z df/dz on the normal-form lift.

    ``nu`` is anything exposing ``nu_x, nu_y, nu_z`` (SurfaceElems) or a
    plain triple of them.
    """
    if isinstance(nu, tuple):
        nx, ny, nz = nu
    else:
        nx, ny, nz = nu.nu_x, nu.nu_y, nu.nu_z
    s = nx.surface
    if not isinstance(f, SurfaceElem):
        f = normal_form(f, s)
    lift = f.poly
    total = nx.poly * lift.derivative("x") + ny.poly * lift.derivative("y") + nz.poly * lift.derivative("z")
    return SurfaceElem(total, s)


def parse_elem(text: str, surface: SurfaceDef) -> SurfaceElem:
    return normal_form(parse_poly(text, surface.registry), surface)


__all__ = [
    "Membership",
    "SurfaceDef",
    "SurfaceElem",
    "apply_derivation",
    "divisible_by_x_power",
    "image_in_localization",
    "localized_member",
    "normal_form",
    "parse_elem",
]

