"""Dense univariate polynomials over Q."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import InputError
from .poly import DEFAULT, MultiPoly, Registry, as_fraction


class UniPoly:
    """Coefficients low-to-high in a single named variable.

    The coefficient list never has a trailing zero, so ``[]`` is the zero
    polynomial and the last entry is the leading coefficient.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "z"):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_multi(cls, f: MultiPoly, var: str) -> UniPoly:
        extra = f.variables() - {var}
        if extra:
            raise InputError(f"{f} is not univariate in {var} (also uses {sorted(extra)})")
        parts = f.collect(var)
        deg = max(parts, default=-1)
        return cls([parts[e].constant_value() if e in parts else 0 for e in range(deg + 1)], var)

    def to_multi(self, registry: Registry = DEFAULT) -> MultiPoly:
        i = registry.index(self.var)
        terms = {}
        for e, c in enumerate(self.coeffs):
            if c:
                terms[(0,) * i + (e,)] = c
        return MultiPoly(terms, registry)

    @classmethod
    def monomial(cls, power: int, coeff=1, var: str = "z") -> UniPoly:
        return cls([0] * power + [coeff], var)

    # -- basic ---------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and (self.var == other.var or self.degree <= 0)
        if isinstance(other, (int, Rational)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _check(self, other):
        if isinstance(other, (int, Rational)):
            return UniPoly([other], self.var)
        if not isinstance(other, UniPoly):
            return None
        if other.var != self.var and self.degree > 0 and other.degree > 0:
            raise InputError(f"variable mismatch: {self.var} vs {other.var}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([i + j for i, j in zip(a, b)], self._var(other))

    __radd__ = __add__

    def _var(self, other):
        return self.var if self.degree > 0 or other.degree <= 0 else other.var

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self._var(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lc
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot, self.var), UniPoly(rem[: other.degree], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, value):
        """Horner evaluation at a number, MultiPoly, UniPoly or SurfaceElem."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if isinstance(acc, int):
            acc = Fraction(acc)
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return UniPoly([c / self.lc for c in self.coeffs], self.var)

    def __str__(self):
        return str(self.to_multi(DEFAULT.extend(self.var)))

    def __repr__(self):
        return f"UniPoly({str(self)!r}, var={self.var!r})"


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    if f.is_zero() and g.is_zero():
        raise InputError("gcd(0, 0) is undefined")
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: UniPoly) -> UniPoly:
    """f / gcd(f, f'), monic; its degree counts the distinct complex roots."""
    if f.is_zero():
        raise InputError("squarefree part of the zero polynomial")
    if f.degree == 0:
        return UniPoly([1], f.var)
    q, r = divmod(f, uni_gcd(f, f.derivative()))
    assert not r
    return q.monic()


def has_simple_zeros(f: UniPoly) -> bool:
    return f.degree >= 1 and uni_gcd(f, f.derivative()).degree == 0
