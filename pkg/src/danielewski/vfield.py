"""Algebraic vector fields on S = {xy = p(z)} as derivations of C[S].

Covers the hyperbolic field HF = x d/dx - y d/dy, the shears
SF^x = p'(z) d/dy + x d/dz and SF^y = p'(z) d/dx + y d/dz, Lie brackets,
the three classified families of complete fields, the fibration criterion
nu(f) = h(f), and closed-form flows where those are algebraic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .algebra import (
    LaurentPoly,
    MultiPoly,
    UniPoly,
    as_fraction,
    substitute,
)
from .errors import CapError, DegreeError, InputError, ValidationError
from .fibration.specs import (
    CoordX,
    DoubleSection,
    TwoSection,
    _uni,
    as_surface_elem,
    leading_coefficient,
)
from .surface import (
    SurfaceDef,
    SurfaceElem,
    apply_derivation,
    divisible_by_x_power,
    localized_member,
    normal_form,
    parse_elem,
)


@dataclass(frozen=True)
class VectorField:
    nu_x: SurfaceElem
    nu_y: SurfaceElem
    nu_z: SurfaceElem

    @property
    def surface(self) -> SurfaceDef:
        return self.nu_x.surface

    @classmethod
    def from_polys(cls, surface: SurfaceDef, nu_x, nu_y, nu_z) -> VectorField:
        def read(v):
            return parse_elem(v, surface) if isinstance(v, str) else normal_form(v, surface)

        return cls(read(nu_x), read(nu_y), read(nu_z))

    @classmethod
    def from_json(cls, surface: SurfaceDef, data) -> VectorField:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.from_polys(surface, data["nu_x"], data["nu_y"], data["nu_z"])
        except KeyError as exc:
            raise InputError(f"vector field JSON lacks {exc}") from exc

    def to_json(self) -> dict:
        return {"nu_x": str(self.nu_x), "nu_y": str(self.nu_y), "nu_z": str(self.nu_z)}

    def components(self):
        return self.nu_x, self.nu_y, self.nu_z

    def __call__(self, f) -> SurfaceElem:
        return apply_derivation(self, f)

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(*(a + b for a, b in zip(self.components(), other.components())))

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(*(a - b for a, b in zip(self.components(), other.components())))

    def __neg__(self):
        return VectorField(-self.nu_x, -self.nu_y, -self.nu_z)

    def __mul__(self, factor):
        # scalar or function multiple: (g * nu)(f) = g * nu(f)
        if isinstance(factor, VectorField):
            return NotImplemented
        return VectorField(*(factor * c for c in self.components()))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components())

    def tangency_residue(self) -> SurfaceElem:
        return tangency_residue(self.components())

    def __str__(self):
        return f"({self.nu_x}) d/dx + ({self.nu_y}) d/dy + ({self.nu_z}) d/dz"


class Tangency(NamedTuple):
    ok: bool
    residue: SurfaceElem

    def __bool__(self):
        return self.ok


def tangency_residue(triple) -> SurfaceElem:
    nx, ny, nz = triple
    s = nx.surface
    return s.x * ny + s.y * nx - normal_form(s.dp, s) * nz


def is_tangent(nu) -> Tangency:
    """nu(xy - p(z)) = x nu_y + y nu_x - p'(z) nu_z must vanish in C[S]."""
    triple = nu.components() if isinstance(nu, VectorField) else tuple(nu)
    r = tangency_residue(triple)
    return Tangency(r.is_zero(), r)


class Generators(NamedTuple):
    hf: VectorField
    sfx: VectorField
    sfy: VectorField


def generators(surface: SurfaceDef) -> Generators:
    x, y, zero = surface.x, surface.y, surface.const(0)
    dp = normal_form(surface.dp, surface)
    return Generators(
        hf=VectorField(x, -y, zero),
        sfx=VectorField(zero, dp, x),
        sfy=VectorField(dp, zero, y),
    )


def bracket(u: VectorField, v: VectorField) -> VectorField:
    """[u, v] evaluated on the generators x, y, z of C[S]."""
    return VectorField(*(u(vc) - v(uc) for uc, vc in zip(u.components(), v.components())))


# -- the classified families ---------------------------------------------------

@dataclass(frozen=True)
class Family1:
    """c HF + (A(x) z + B(x)) SF^x."""

    c: Fraction = Fraction(0)
    A: UniPoly = UniPoly([], "x")
    B: UniPoly = UniPoly([], "x")

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        object.__setattr__(self, "A", _uni(self.A, "x"))
        object.__setattr__(self, "B", _uni(self.B, "x"))

    def fibration(self):
        return CoordX()

    def to_json(self):
        return {"family": 1, "c": str(self.c), "A": str(self.A), "B": str(self.B)}


@dataclass(frozen=True)
class Family2:
    """The field preserving x^m (x^l (z+a) + Q(x))^n; A is a polynomial in t."""

    c: Fraction = Fraction(0)
    A: UniPoly = UniPoly([], "t")
    m: int = 1
    n: int = 1
    l: int = 0
    a: Fraction = Fraction(0)
    Q: UniPoly = UniPoly([], "x")

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "A", _uni(self.A, "t"))
        object.__setattr__(self, "Q", _uni(self.Q, "x"))

    def fibration(self):
        return TwoSection(self.m, self.n, self.l, self.a, self.Q)

    def to_json(self):
        return {
            "family": 2, "c": str(self.c), "A": str(self.A), "m": self.m, "n": self.n,
            "l": self.l, "a": str(self.a), "Q": str(self.Q),
        }


@dataclass(frozen=True)
class Family3:
    """A(a x + y + p''/6) (-p'''/6 HF + a SF^x - SF^y); needs deg p = 4."""

    A: UniPoly = UniPoly([1], "t")

    def __post_init__(self):
        object.__setattr__(self, "A", _uni(self.A, "t"))

    def fibration(self):
        return DoubleSection()

    def to_json(self):
        return {"family": 3, "A": str(self.A)}


def family_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    fam = data.get("family")
    try:
        if fam == 1:
            return Family1(data.get("c", "0"), str(data.get("A", "0")), str(data.get("B", "0")))
        if fam == 2:
            return Family2(
                c=data.get("c", "0"), A=str(data.get("A", "0")), m=int(data.get("m", 1)),
                n=int(data.get("n", 1)), l=int(data.get("l", 0)), a=str(data.get("a", "0")),
                Q=str(data.get("Q", "0")),
            )
        if fam == 3:
            return Family3(str(data.get("A", "1")))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad family parameters: {exc}") from exc
    raise InputError(f"unknown family {fam!r}")


def _eval(A: UniPoly, value, surface: SurfaceDef):
    out = A(value)
    if isinstance(out, Fraction):
        return surface.const(out) if isinstance(value, SurfaceElem) else MultiPoly.const(out, surface.registry)
    return out


def nu0(surface: SurfaceDef) -> VectorField:
    """-p'''(z)/6 HF + a SF^x - SF^y for deg p = 4, a the leading coefficient."""
    if surface.k != 4:
        raise DegreeError(f"deg p = 4 required, got {surface.k}")
    a = leading_coefficient(surface)
    g = generators(surface)
    p3 = normal_form(surface.p.derivative("z").derivative("z").derivative("z") / 6, surface)
    return -p3 * g.hf + a * g.sfx - g.sfy


def check_family2(params: Family2, surface: SurfaceDef) -> None:
    """Raise ValidationError unless every defining condition of family (2) holds."""
    m, n, l = params.m, params.n, params.l
    if m < 1 or n < 1 or gcd(m, n) != 1:
        raise ValidationError("m, n must be coprime positive integers", f"m={m}, n={n}")
    if l < 0:
        raise ValidationError("l must be non-negative", f"l={l}")
    if params.Q.degree >= l:
        raise ValidationError("deg Q < l", f"deg Q={params.Q.degree}, l={l}")
    A0 = params.A.coeffs[0] if params.A.coeffs else Fraction(0)
    target = params.c / (m + n * l)
    if A0 != target:
        raise ValidationError("A(0)=c/(m+nl)", f"A(0)={A0}, c/(m+nl)={target}")
    reg = surface.registry
    x = MultiPoly.var("x", reg)
    Q = params.Q.to_multi(reg)
    f = params.fibration().poly(reg)
    Af = _eval(params.A, f, surface)
    cond = normal_form(Af * (m * Q + n * x * Q.derivative("x")) - params.c * Q, surface)
    res = divisible_by_x_power(cond, l + 1)
    if not res:
        raise ValidationError(
            "A(f)(mQ(x)+nxQ'(x)) - cQ(x) in x^(l+1) C[S]",
            f"x-division stopped at step {res.witness[0]} with remainder {res.witness[1]}",
        )


def build_family(params, surface: SurfaceDef) -> VectorField:
    """Assemble a Main-Theorem field, validating its parameters first."""
    g = generators(surface)
    if isinstance(params, Family1):
        reg = surface.registry
        coef = normal_form(params.A.to_multi(reg) * MultiPoly.var("z", reg) + params.B.to_multi(reg), surface)
        return params.c * g.hf + coef * g.sfx
    if isinstance(params, Family3):
        if surface.k != 4:
            raise DegreeError("family (3) needs deg p = 4", f"deg p = {surface.k}")
        f = as_surface_elem(DoubleSection(), surface)
        return _eval(params.A, f, surface) * nu0(surface)
    if isinstance(params, Family2):
        check_family2(params, surface)
        return _assemble_family2(params, surface)
    raise InputError(f"unknown family parameters {params!r}")


def _assemble_family2(params: Family2, surface: SurfaceDef) -> VectorField:
    # built in C[x^{+-1}, z] with y = p(z)/x, then pulled back to C[S]
    m, n, l, c = params.m, params.n, params.l, params.c
    reg = surface.registry
    x = MultiPoly.var("x", reg)
    z = MultiPoly.var("z", reg)
    Q = params.Q.to_multi(reg)
    inv = LaurentPoly.monomial({"x": -1}, registry=reg)
    p = LaurentPoly(surface.p)
    dp = LaurentPoly(surface.dp)
    Af = LaurentPoly(_eval(params.A, params.fibration().poly(reg), surface))
    zpa = LaurentPoly(z + params.a)
    u1 = c * (zpa * inv + LaurentPoly(Q) * inv ** (l + 1))
    w = (m + n * l) * zpa * inv + LaurentPoly(m * Q + n * x * Q.derivative("x")) * inv ** (l + 1)
    X = LaurentPoly(x)
    comps = {
        "nu_x": Af * n * X,
        "nu_y": u1 * dp + Af * (-n * p * inv - w * dp),
        "nu_z": u1 * X - Af * w * X,
    }
    out = {}
    for name, val in comps.items():
        res = localized_member(val, surface)
        if not res:
            i, rem = res.witness
            raise ValidationError(
                f"{name} is not regular on S",
                f"coefficient of x^{i} leaves remainder {rem} modulo p(z)^{-i}",
            )
        out[name] = res.element
    return VectorField(**out)


# -- fibration preservation ------------------------------------------------------

def _solve_linear(columns, rhs):
    """Solve sum_i h_i * columns[i] = rhs over Q; sparse dict vectors; None if inconsistent."""
    keys = set(rhs)
    for col in columns:
        keys |= set(col)
    keys = sorted(keys, key=repr)
    n = len(columns)
    rows = [[col.get(k, Fraction(0)) for col in columns] + [rhs.get(k, Fraction(0))] for k in keys]
    pivots = []
    r = 0
    for cidx in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][cidx]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][cidx]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][cidx]:
                f = rows[i][cidx]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(cidx)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, cidx in enumerate(pivots):
        sol[cidx] = rows[i][-1]
    return sol


def _fit(g: SurfaceElem, powers) -> UniPoly | None:
    sol = _solve_linear([pw.poly.terms for pw in powers], g.poly.terms)
    return None if sol is None else UniPoly(sol, "t")


def preserves_fibration(nu: VectorField, f, degree_cap: int = 32) -> UniPoly | None:
    """Find h in Q[t] with nu(f) = h(f) in C[S].

    Returns h, or None when no such h exists.  With the weights
    x, y -> deg p and z -> 2 the associated graded ring of C[S] is a domain,
    so deg h is forced to be wdeg(nu(f)) / wdeg(f); the search is therefore
    decisive.  With parameter rewrite relations in force that argument is
    unavailable and degrees 0..degree_cap are tried; CapError means
    inconclusive.
    """
    if degree_cap < 0:
        raise InputError("degree_cap must be non-negative")
    s = nu.surface
    f = normal_form(f, s)
    g = nu(f)
    if g.is_zero():
        return UniPoly([], "t")
    weights = {"x": s.k, "y": s.k, "z": 2}
    if not s.relations:
        wf = f.poly.weighted_degree(weights)
        wg = g.poly.weighted_degree(weights)
        if wf <= 0:
            return None
        D, rem = divmod(wg, wf)
        if rem:
            return None
        if D > degree_cap:
            raise CapError(f"nu(f) would need deg h = {D} > cap {degree_cap}")
        return _fit(g, [f ** i for i in range(D + 1)])
    powers = [s.const(1)]
    for D in range(degree_cap + 1):
        if D:
            powers.append(powers[-1] * f)
        h = _fit(g, powers)
        if h is not None:
            return h
    raise CapError(f"no h of degree <= {degree_cap} found")


# -- closed-form flows ---------------------------------------------------------

@dataclass(frozen=True)
class PolyFlow:
    """Flow map (X, Y, Z) in the group parameter ``param``.

    ``kind`` is 'additive' (time t, identity at 0) or 'multiplicative'
    (u in C*, identity at 1, components Laurent in u).
    """

    X: object
    Y: object
    Z: object
    param: str
    kind: str
    surface: SurfaceDef

    def components(self):
        return self.X, self.Y, self.Z

    def at(self, value):
        return tuple(
            substitute(c, {self.param: value}, polynomial=False) for c in self.components()
        )

    def surface_residue(self) -> SurfaceElem:
        """nf(X Y - p(Z)); zero iff the flow maps S to itself."""
        X, Y, Z = (LaurentPoly(c) if isinstance(c, MultiPoly) else c for c in self.components())
        pz = substitute(self.surface.p, {"z": Z}, polynomial=False)
        return normal_form((X * Y - pz).to_poly(), self.surface)

    def preserves_surface(self) -> bool:
        return self.surface_residue().is_zero()

    def identity_residue(self):
        unit = 0 if self.kind == "additive" else 1
        reg = self.surface.registry
        ids = [MultiPoly.var(v, reg) for v in ("x", "y", "z")]
        return [c - i for c, i in zip(self.at(unit), ids)]

    def group_law_residue(self):
        """Phi_t(Phi_s(.)) - Phi_{s+t}(.) (or u, v and u*v), componentwise."""
        reg = self.surface.registry
        other = "s" if self.kind == "additive" else "v"
        me = MultiPoly.var(self.param, reg)
        you = MultiPoly.var(other, reg)
        inner = dict(zip(("x", "y", "z"), (
            substitute(c, {self.param: you}, polynomial=False) for c in self.components()
        )))
        combined = me + you if self.kind == "additive" else me * you
        out = []
        for c in self.components():
            lhs = substitute(c, inner, polynomial=False)
            rhs = substitute(c, {self.param: combined}, polynomial=False)
            out.append(lhs - rhs)
        return out

    def satisfies_group_law(self) -> bool:
        return all(not r for r in self.group_law_residue())

    def velocity(self):
        """Generator of the flow: d/dt at t=0, or u d/du at u=1."""
        out = []
        for c in self.components():
            c = c if isinstance(c, LaurentPoly) else LaurentPoly(c)
            d = c.derivative(self.param)
            if self.kind == "multiplicative":
                d = d * MultiPoly.var(self.param, self.surface.registry)
            unit = 0 if self.kind == "additive" else 1
            out.append(normal_form(substitute(d, {self.param: unit}), self.surface))
        return VectorField(*out)


def flow_of(kind: str, surface: SurfaceDef, B=None) -> PolyFlow:
    """Closed-form flow of HF (kind='HF') or of B(x) SF^x (kind='shear')."""
    reg = surface.registry
    x, y, z = (MultiPoly.var(v, reg) for v in ("x", "y", "z"))
    if kind == "HF":
        u = LaurentPoly.monomial({"u": 1}, registry=reg)
        uinv = LaurentPoly.monomial({"u": -1}, registry=reg)
        return PolyFlow(u * x, uinv * y, z, "u", "multiplicative", surface)
    if kind == "shear":
        B = _uni(B if B is not None else 1, "x")
        t = MultiPoly.var("t", reg)
        Z = z + B.to_multi(reg) * x * t
        diff = substitute(surface.p, {"z": Z}) - surface.p
        # the flow of y is (p(Z) - p(z)) / x; exact by construction
        Y = y + diff.exact_div(x)
        return PolyFlow(x, Y, Z, "t", "additive", surface)
    raise InputError(f"no closed-form flow for kind {kind!r}")


__all__ = [
    "Family1",
    "Family2",
    "Family3",
    "Generators",
    "PolyFlow",
    "Tangency",
    "VectorField",
    "bracket",
    "build_family",
    "check_family2",
    "family_from_json",
    "flow_of",
    "generators",
    "is_tangent",
    "nu0",
    "preserves_fibration",
    "tangency_residue",
]
