"""Random instance generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import sympy

from danielewski.algebra import LaurentPoly, MultiPoly, UniPoly, divmod_in_var, has_simple_zeros
from danielewski.surface import SurfaceDef, image_in_localization, normal_form
from danielewski.vfield import Family1, Family2

SWEEP = ("z^2 - 1", "z^3 - z", "z^4 - 1", "z^5 - z")


def rand_frac(rng, lo=-5, hi=5, dens=(1, 1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_uni(rng, deg, var):
    return UniPoly([rand_frac(rng) for _ in range(deg + 1)], var)


def random_simple_p(rng, k, lo=-4, hi=4):
    while True:
        coeffs = [rng.randint(lo, hi) for _ in range(k)] + [rng.choice([1, 2, -1, 3])]
        up = UniPoly(coeffs, "z")
        if has_simple_zeros(up):
            return up


def random_family1(rng):
    return Family1(rand_frac(rng), rand_uni(rng, rng.randint(0, 2), "x"), rand_uni(rng, rng.randint(0, 2), "x"))


def coprime_pairs(limit):
    return [(m, n) for m in range(1, limit + 1) for n in range(1, limit + 1) if gcd(m, n) == 1]


def _x_power_obstruction(elem, j):
    """Linear functional vector whose vanishing means elem in x^j C[S]."""
    s = elem.surface
    img = image_in_localization(elem)
    shift = LaurentPoly.monomial({"x": -j}, registry=s.registry)
    out = {}
    for i, coeff in (img * shift).collect("x").items():
        if i >= 0:
            continue
        _, r = divmod_in_var(coeff.num, s.p_power(-i), "z")
        for mono, c in r.terms.items():
            out[(i, mono)] = c
    return out


def family2_solution_space(surface, m, n, l, a, Q, degA):
    """Basis (as lists [c, A_0..A_degA]) of parameters meeting both conditions of family (2)."""
    reg = surface.registry
    x = MultiPoly.var("x", reg)
    Qm = Q.to_multi(reg)
    base = normal_form(m * Qm + n * x * Qm.derivative("x"), surface)
    z = MultiPoly.var("z", reg)
    f = normal_form(x ** m * (x ** l * (z + a) + Qm) ** n, surface)
    cols = [_x_power_obstruction(normal_form(-Qm, surface), l + 1)]
    power = surface.const(1)
    for _ in range(degA + 1):
        cols.append(_x_power_obstruction(power * base, l + 1))
        power = power * f
    keys = sorted({k for col in cols for k in col}, key=repr)
    rows = [[sympy.Rational(str(col.get(k, 0))) for col in cols] for k in keys]
    # A(0) (m + n l) - c = 0
    rows.append([-1, m + n * l] + [0] * degA)
    M = sympy.Matrix(rows)
    return [[Fraction(str(v)) for v in vec] for vec in M.nullspace()]


def random_family2(rng, surface, max_mn=4, max_l=3, degA=3, force_q=None):
    """A random valid Family2 instance, solving the linear constraints on (c, A)."""
    m, n = rng.choice(coprime_pairs(max_mn))
    l = rng.randint(0, max_l)
    a = rand_frac(rng, -3, 3)
    if l == 0 or force_q is False:
        Q = UniPoly([], "x")
    else:
        Q = UniPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, l))], "x")
    basis = family2_solution_space(surface, m, n, l, a, Q, degA)
    vec = [Fraction(0)] * (degA + 2)
    for b in basis:
        w = rng.randint(-3, 3) or 1
        vec = [v + w * bi for v, bi in zip(vec, b)]
    c, A = vec[0], UniPoly(vec[1:], "t")
    return Family2(c=c, A=A, m=m, n=n, l=l, a=a, Q=Q)


def sweep_surfaces():
    return [SurfaceDef(p) for p in SWEEP]


def rng_for(name):
    return random.Random(f"danielewski:{name}")
