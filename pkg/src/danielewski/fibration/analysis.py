"""Fiber analysis and exact certificates for the classified fibrations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import (
    DEFAULT,
    LaurentPoly,
    MultiPoly,
    UniPoly,
    as_fraction,
    discriminant,
    divmod_in_var,
    squarefree_part,
    substitute,
)
from ..certificate import Certificate
from ..errors import DegreeError, InputError
from ..surface import SurfaceDef, normal_form
from .specs import CoordX, CoordZ, DoubleSection, TwoSection, leading_coefficient


@dataclass(frozen=True)
class FiberReport:
    """Fiber data of a fibration f: S -> C.

    ``special_values`` is a squarefree polynomial in ``c`` whose roots are
    the special fiber values.  ``special_fibers`` lists ``(label, chi)``
    for each special fiber whose Euler characteristic is known; it is empty
    when only the count is available.  ``chi_S`` is the right-hand side
    chi(F) * chi(C) + sum(chi(F') - chi(F)).
    """

    kind: str
    generic_fiber: str  # "C" or "Cstar"
    generic_chi: int
    special_values: UniPoly
    special_fibers: tuple = ()
    chi_S: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def special_count(self) -> int:
        return self.special_values.degree

    @property
    def generic_term(self) -> int:
        return self.generic_chi * 1  # chi(F x C) = chi(F) * chi(C)

    @property
    def correction_terms(self) -> tuple:
        return tuple(chi - self.generic_chi for _, chi in self.special_fibers)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "generic_fiber": self.generic_fiber,
            "generic_chi": self.generic_chi,
            "special_values": str(self.special_values),
            "special_count": self.special_count,
            "special_fibers": [{"fiber": lab, "chi": chi} for lab, chi in self.special_fibers],
            "chi_S": self.chi_S,
            **({"notes": self.notes} if self.notes else {}),
        }


def _euler(kind, generic, gchi, values, fibers, notes=None) -> FiberReport:
    chi = gchi * 1 + sum(c - gchi for _, c in fibers)
    return FiberReport(kind, generic, gchi, values, tuple(fibers), chi, dict(notes or {}))


def _numeric_p(surface: SurfaceDef) -> UniPoly:
    if surface.params:
        raise InputError("fiber analysis needs a numeric p(z)")
    return surface.p_uni


def double_section_discriminant(surface: SurfaceDef, var: str = "c") -> MultiPoly:
    """Delta_c(z) = (c - p''(z)/6)^2 - 4 a p(z), a polynomial in z and ``var``."""
    if surface.k != 4:
        raise DegreeError(f"the double-section fibration needs deg p = 4, got {surface.k}")
    reg = surface.registry
    a = leading_coefficient(surface)
    cv = MultiPoly.var(var, reg)
    p2 = surface.p.derivative("z").derivative("z") / 6
    return (cv - p2) ** 2 - 4 * a * surface.p


def euler_report(spec, surface: SurfaceDef) -> FiberReport:
    """Fiber types and the Euler characteristic formula for ``spec``."""
    p = _numeric_p(surface)
    roots = squarefree_part(p)
    value = UniPoly([0, 1], "c")
    if isinstance(spec, CoordX):
        # over 0: x = 0, p(z) = 0, y free -> k disjoint lines
        return _euler("CoordX", "C", 1, value, [("0: %d disjoint lines" % roots.degree, roots.degree)])
    if isinstance(spec, CoordZ):
        # over a root z0: xy = 0, a cross C v C of chi 1
        vals = UniPoly(roots.coeffs, "c")
        return _euler("CoordZ", "Cstar", 0, vals, [(f"root {i + 1} of p: C v C", 1) for i in range(roots.degree)])
    if isinstance(spec, TwoSection):
        return _two_section_report(spec, surface, p)
    if isinstance(spec, DoubleSection):
        delta = double_section_discriminant(surface)
        parts = delta.collect("z")
        if 4 in parts or 3 in parts:
            raise ArithmeticError("z^4 or z^3 terms of Delta_c did not cancel")
        lc2 = parts.get(2, MultiPoly.const(0, delta.registry))
        degeneracy = lc2 * discriminant(delta, "z") if delta.degree("z") == 2 else lc2
        vals = squarefree_part(UniPoly.from_multi(degeneracy, "c"))
        return FiberReport(
            "DoubleSection", "Cstar", 0, vals, (), None,
            {"delta": str(delta), "degeneracy": str(degeneracy)},
        )
    raise InputError(f"unknown fibration {spec!r}")


def _two_section_report(spec: TwoSection, surface: SurfaceDef, p: UniPoly) -> FiberReport:
    k = surface.k
    # f = 0 splits into {x = 0} (k lines) and {x^l (z+a) + Q(x) = 0}
    fibers_chi = k
    extra = "C* disjoint from x = 0"
    if spec.Q.is_zero() and p(-spec.a) == 0:
        # z = -a meets x = 0 inside the k lines; the extra line y = 0 crosses one of them
        extra = "line y = 0, z = -a crossing x = 0 once"
        fibers_chi += 1 - 1
    return _euler(
        "TwoSection", "Cstar", 0, UniPoly([0, 1], "c"),
        [(f"0: {k} lines + {extra}", fibers_chi)],
    )


# -- certificates ----------------------------------------------------------------

_LAURENT_REG = DEFAULT


def verify_trivialization(spec: TwoSection) -> Certificate:
    """f(t^n, *, (lambda t^-m - Q(t^n)) / t^(nl) - a) = lambda^n as a Laurent identity."""
    reg = _LAURENT_REG
    t = LaurentPoly(MultiPoly.var("t", reg))
    lam = LaurentPoly(MultiPoly.var("lambda", reg))
    tinv = LaurentPoly.monomial({"t": -1}, registry=reg)
    x_img = t ** spec.n
    Q_img = substitute(spec.Q.to_multi(reg), {"x": x_img}, polynomial=False)
    z_img = (lam * tinv ** spec.m - Q_img) * tinv ** (spec.n * spec.l) - spec.a
    image = substitute(spec.poly(reg), {"x": x_img, "z": z_img}, polynomial=False)
    residue = image - lam ** spec.n
    return Certificate.from_residue(
        "trivialization: f(t^n, (lambda t^-m - Q(t^n))/t^(nl) - a) = lambda^n",
        residue,
        inputs=spec.to_json(),
        details={"image": str(image), "x": str(x_img), "z": str(z_img)},
    )


@dataclass(frozen=True)
class Quartic:
    """p = a (z^4 + b z^3 + c z^2 + d z + e)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    @classmethod
    def of(cls, surface: SurfaceDef) -> Quartic:
        if surface.k != 4:
            raise DegreeError(f"deg p = 4 required, got {surface.k}")
        cs = _numeric_p(surface).coeffs
        a = cs[4]
        return cls(a, cs[3] / a, cs[2] / a, cs[1] / a, cs[0] / a)

    def xi_squared(self, alpha):
        # z^2 coefficient of the completed square; see the decisions ledger on b^2/4
        return alpha + self.b ** 2 / 4 - self.c


def _fiber_y(q: Quartic, alpha, reg) -> MultiPoly:
    """y on C^alpha = {a x + y + 2a z^2 + a b z + a alpha = 0}."""
    x = MultiPoly.var("x", reg)
    z = MultiPoly.var("z", reg)
    return -q.a * x - 2 * q.a * z ** 2 - q.a * q.b * z - q.a * alpha


def _deg4_setup(surface: SurfaceDef, alpha, xi):
    q = Quartic.of(surface)
    reg = surface.registry
    if xi is None:
        # symbolic xi with xi^2 -> alpha + b^2/4 - c; everything scaled by D = 4 xi^2
        al = MultiPoly.var("alpha", reg) if alpha is None else MultiPoly.const(as_fraction(alpha), reg)
        xs = MultiPoly.var("xi", reg)
        return q, al, xs, ("xi", 2, q.xi_squared(al))
    alpha, xi = as_fraction(alpha), as_fraction(xi)
    if xi == 0:
        raise InputError("xi must be nonzero")
    if xi * xi != q.xi_squared(alpha):
        raise InputError(f"xi^2 = {xi * xi} but alpha + b^2/4 - c = {q.xi_squared(alpha)}")
    return q, MultiPoly.const(alpha, reg), MultiPoly.const(xi, reg), None


def _reduce_xi(f: MultiPoly, rule):
    return f if rule is None else f.reduce_power(*rule)


def verify_deg4_parametrization(surface: SurfaceDef, alpha=None, xi=None, *, kappa_override=None) -> Certificate:
    """(x/a)(a x + y + 2a z^2 + a b z + a alpha), with xy -> p(z), equals t(t - 2 xi (z + chi)) + kappa.

    With ``xi=None`` the check runs with xi (and alpha, if also None) as
    symbols under the rule xi^2 -> alpha + b^2/4 - c, after multiplying
    through by D^2 with D = 4 xi^2 so that chi and kappa stay polynomial.
    """
    q, al, xs, rule = _deg4_setup(surface, alpha, xi)
    reg = surface.registry
    x = MultiPoly.var("x", reg)
    y = MultiPoly.var("y", reg)
    z = MultiPoly.var("z", reg)
    lhs = normal_form(x * (q.a * x + y + 2 * q.a * z ** 2 + q.a * q.b * z + q.a * al) / q.a, surface).poly
    y_fib = _fiber_y(q, al, reg)
    base = x + z ** 2 + q.b / 2 * z + al / 2  # (ax - y)/(2a) on the fiber
    N = al * q.b - 2 * q.d  # chi = N / (4 xi^2)
    if rule is None:
        chi = N.constant_value() / (4 * xs.constant_value() ** 2)
        kappa = q.e - al.constant_value() ** 2 / 4 + xs.constant_value() ** 2 * chi ** 2
        if kappa_override is not None:
            kappa = as_fraction(kappa_override)
        t = base + xs * (z + chi)
        t_check = substitute((q.a * x - y) / (2 * q.a), {"y": y_fib}) + xs * (z + chi)
        rhs = t * (t - 2 * xs * (z + chi)) + kappa
        residue = rhs - lhs
        inputs = {"alpha": str(al), "xi": str(xs)}
        details = {"chi": str(chi), "kappa": str(kappa), "t": str(t), "lhs": str(lhs)}
        if t_check != t:
            raise ArithmeticError("the two expressions for t disagree on the fiber")
    else:
        D = 4 * rule[2]  # 4 xi^2, already reduced
        Dt = D * base + xs * (D * z + N)
        Dt2 = D * base - xs * (D * z + N)  # D (t - 2 xi (z + chi))
        Dkappa2 = D ** 2 * (q.e - al ** 2 / 4) + xs ** 2 * N ** 2
        if kappa_override is not None:
            Dkappa2 = D ** 2 * as_fraction(kappa_override)
        residue = _reduce_xi(Dt * Dt2 + Dkappa2 - D ** 2 * lhs, rule)
        inputs = {"alpha": str(al), "xi": "symbolic"}
        details = {"scale": "D^2, D = 4 xi^2 = " + str(D), "lhs": str(lhs)}
    inputs["p"] = str(surface.p)
    return Certificate.from_residue(
        "fiber parametrization: (x/a)(ax + y + 2az^2 + abz + a alpha) = t(t - 2xi(z+chi)) + kappa",
        residue, inputs, details,
    )


def verify_nu0_eigenvalue(surface: SurfaceDef, alpha=None, xi=None, *, field=None) -> Certificate:
    """nu0(t) - 2 a xi t vanishes on the fiber C^alpha.

    The residue is computed in C[S], y is replaced by its value on the
    fiber, and the result is reduced modulo the fiber equation
    a x^2 + a x (2z^2 + bz + alpha) + p(z) written in x and z.
    """
    from ..vfield import nu0

    q, al, xs, rule = _deg4_setup(surface, alpha, xi)
    reg = surface.registry
    x = MultiPoly.var("x", reg)
    y = MultiPoly.var("y", reg)
    z = MultiPoly.var("z", reg)
    nu = nu0(surface) if field is None else field
    N = al * q.b - 2 * q.d
    if rule is None:
        chi = N.constant_value() / (4 * xs.constant_value() ** 2)
        t = (q.a * x - y) / (2 * q.a) + xs * (z + chi)
    else:
        D = 4 * rule[2]
        t = D * (q.a * x - y) / (2 * q.a) + xs * (D * z + N)  # D t
    t_elem = normal_form(t, surface)
    raw = nu(t_elem) - normal_form(2 * q.a * xs * t, surface)
    on_fiber = _reduce_xi(substitute(raw.poly, {"y": _fiber_y(q, al, reg)}), rule)
    relation = q.a * x ** 2 + q.a * x * (2 * z ** 2 + q.b * z + al) + surface.p
    _, residue = divmod_in_var(on_fiber, relation, "x")
    residue = _reduce_xi(residue, rule)
    eigen = 2 * q.a * xs
    return Certificate.from_residue(
        "nu0 acts on t by multiplication with 2 a xi",
        residue,
        inputs={"p": str(surface.p), "alpha": str(al), "xi": str(xs) if rule is None else "symbolic"},
        details={"eigenvalue": str(eigen), "field": nu.to_json()},
    )


def verify_conic_pencil_identity(roots=None, lead=None, *, constant_shift=0) -> Certificate:
    """The double-section function written through the conic pencil.

    Checks (x + z^2 - (z1+z2) z + z1 z2)(x + z^2 - (z3+z4) z + z3 z4)
    = x (x + 2z^2 - s1 z + z1 z2 + z3 z4) + prod(z - zi) as a polynomial
    identity, then on xy = a prod(z - zi) that
    x (a x + y + a(2z^2 - s1 z + z1 z2 + z3 z4)) = a L1 L2.
    ``roots``/``lead`` default to the symbols z1..z4 and a.
    """
    reg = DEFAULT
    z = MultiPoly.var("z", reg)
    x = MultiPoly.var("x", reg)
    y = MultiPoly.var("y", reg)

    def val(v, name):
        return MultiPoly.var(name, reg) if v is None else MultiPoly.const(as_fraction(v), reg)

    zs = [val(None if roots is None else roots[i], f"z{i + 1}") for i in range(4)]
    a = val(lead, "a")
    if roots is not None and len(roots) != 4:
        raise InputError("exactly four roots are needed")
    if lead is not None and as_fraction(lead) == 0:
        raise InputError("the leading coefficient must be nonzero")
    z1, z2, z3, z4 = zs
    s1 = z1 + z2 + z3 + z4
    L1 = x + z ** 2 - (z1 + z2) * z + z1 * z2
    L2 = x + z ** 2 - (z3 + z4) * z + z3 * z4
    prod = (z - z1) * (z - z2) * (z - z3) * (z - z4)
    bracket = x + 2 * z ** 2 - s1 * z + z1 * z2 + z3 * z4 + constant_shift
    pure = L1 * L2 - (x * bracket + prod)
    surface = SurfaceDef(a * prod, registry=reg)
    f = a * x + y + a * (bracket - x)  # a x + y + a(2z^2 - s1 z + ...)
    on_s = normal_form(x * f, surface) - normal_form(a * L1 * L2, surface)
    residue = pure if pure else on_s.poly
    return Certificate.from_residue(
        "conic pencil: L1 L2 = x(x + 2z^2 - s1 z + z1z2 + z3z4) + prod(z - zi)",
        residue,
        inputs={
            "roots": "symbolic" if roots is None else [str(as_fraction(r)) for r in roots],
            "a": "symbolic" if lead is None else str(as_fraction(lead)),
            "constant_shift": str(as_fraction(constant_shift)),
        },
        details={"pure_residue": str(pure), "surface_residue": str(on_s)},
    )


__all__ = [
    "FiberReport",
    "Quartic",
    "double_section_discriminant",
    "euler_report",
    "verify_conic_pencil_identity",
    "verify_deg4_parametrization",
    "verify_nu0_eigenvalue",
    "verify_trivialization",
]
