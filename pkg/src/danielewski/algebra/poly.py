"""Sparse multivariate polynomials over Q, and their Laurent localisations.

Exponent vectors are tuples indexed by a :class:`Registry` with trailing
zeros stripped, so a polynomial built over a registry stays valid after the
registry is extended with more names.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from numbers import Rational

from ..errors import InputError, ResidueError

__all__ = [
    "Registry",
    "DEFAULT",
    "MultiPoly",
    "LaurentPoly",
    "as_fraction",
    "substitute",
    "divmod_in_var",
]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise InputError(f"not an exact rational: {value!r}")


class Registry:
    """Ordered, immutable set of variable names.

    The order is the variable order of the graded-lex monomial order.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        for n in names:
            if not n.isidentifier():
                raise InputError(f"bad variable name {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Registry) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Registry({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    def extend(self, *names: str) -> Registry:
        new = [n for n in names if n not in self._index]
        return self if not new else Registry(self.names + tuple(new))

    def join(self, other: Registry) -> Registry:
        """The common registry of two compatible registries (one a prefix of the other)."""
        if self is other or self.names == other.names:
            return self
        short, long_ = (self, other) if len(self) <= len(other) else (other, self)
        if long_.names[: len(short)] != short.names:
            raise InputError(f"registry mismatch: {self} vs {other}")
        return long_


DEFAULT = Registry(
    (
        "x", "y", "z", "t", "lambda", "xi", "alpha",
        "u", "v", "s", "r",
        "a", "b", "c", "d", "e",
        "z1", "z2", "z3", "z4",
    )
)


def _strip(mono):
    n = len(mono)
    while n and mono[n - 1] == 0:
        n -= 1
    return mono if n == len(mono) else mono[:n]


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(i + j for i, j in zip_longest(a, b, fillvalue=0))


def _mono_divides(a, b):
    """True if monomial a divides b."""
    if len(a) > len(b):
        return False
    return all(i <= j for i, j in zip(a, b))


def _mono_sub(b, a):
    return _strip(tuple(j - i for i, j in zip_longest(a, b, fillvalue=0)))


class MultiPoly:
    """Immutable sparse polynomial with :class:`~fractions.Fraction` coefficients."""

    __slots__ = ("registry", "terms", "_hash")

    def __init__(self, terms=None, registry: Registry = DEFAULT):
        self.registry = registry
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = as_fraction(coeff)
                if coeff:
                    mono = _strip(tuple(mono))
                    if any(e < 0 for e in mono):
                        raise InputError("negative exponent in MultiPoly")
                    clean[mono] = clean.get(mono, 0) + coeff
            clean = {m: c for m, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, registry):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.registry = registry
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value, registry: Registry = DEFAULT) -> MultiPoly:
        value = as_fraction(value)
        return cls._raw({(): value} if value else {}, registry)

    @classmethod
    def var(cls, name: str, registry: Registry = DEFAULT, power: int = 1) -> MultiPoly:
        i = registry.index(name)
        mono = [0] * (i + 1)
        mono[i] = power
        return cls._raw({_strip(tuple(mono)): Fraction(1)}, registry)

    @classmethod
    def monomial(cls, exps: dict, coeff=1, registry: Registry = DEFAULT) -> MultiPoly:
        mono = [0] * len(registry)
        for name, e in exps.items():
            mono[registry.index(name)] = e
        return cls({tuple(mono): coeff}, registry)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            reg = self.registry.join(other.registry)
            return other, reg
        if isinstance(other, (int, Rational)):
            return MultiPoly.const(other, self.registry), self.registry
        return None, None

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other, reg = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self if reg is self.registry else MultiPoly._raw(self.terms, reg)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._raw(out, reg)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self.terms.items()}, self.registry)

    def __sub__(self, other):
        other, _ = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other, reg = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly._raw({}, reg)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly._raw({m: c for m, c in out.items() if c}, reg)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero scalar is a ring operation here
        if isinstance(other, (int, Rational)):
            other = as_fraction(other)
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return MultiPoly._raw({m: c / other for m, c in self.terms.items()}, self.registry)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial powers must be non-negative integers")
        result = MultiPoly.const(1, self.registry)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == MultiPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise InputError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return {self.registry.names[i] for i in used}

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        i = self.registry.index(var)
        return max((m[i] if i < len(m) else 0) for m in self.terms)

    def weighted_degree(self, weights: dict) -> int:
        if not self.terms:
            return -1
        w = [weights.get(n, 0) for n in self.registry.names]
        return max(sum(e * wi for e, wi in zip(m, w)) for m in self.terms)

    def exponent(self, mono, var: str) -> int:
        i = self.registry.index(var)
        return mono[i] if i < len(mono) else 0

    def _sort_key(self, mono):
        pad = mono + (0,) * (len(self.registry) - len(mono))
        return (sum(mono), pad)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda mc: self._sort_key(mc[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        m = max(self.terms, key=self._sort_key)
        return m, self.terms[m]

    def coeff(self, exps: dict | None = None) -> Fraction:
        mono = [0] * len(self.registry)
        for name, e in (exps or {}).items():
            mono[self.registry.index(name)] = e
        return self.terms.get(_strip(tuple(mono)), Fraction(0))

    def collect(self, var: str) -> dict:
        """Map power -> coefficient polynomial (free of ``var``)."""
        i = self.registry.index(var)
        parts = {}
        for m, c in self.terms.items():
            e = m[i] if i < len(m) else 0
            if e:
                m = _strip(m[:i] + (0,) + m[i + 1:])
            parts.setdefault(e, {})[m] = c
        return {e: MultiPoly._raw(t, self.registry) for e, t in parts.items()}

    def with_registry(self, registry: Registry) -> MultiPoly:
        self.registry.join(registry)
        if len(registry) < len(self.registry):
            # shrinking: every used variable must still be present
            if any(len(m) > len(registry) for m in self.terms):
                raise InputError(f"{self} uses variables outside {registry}")
        return MultiPoly._raw(self.terms, registry)

    # -- calculus / structure ---------------------------------------------
    def derivative(self, var: str) -> MultiPoly:
        i = self.registry.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i] if i < len(m) else 0
            if e:
                nm = _strip(m[:i] + (e - 1,) + m[i + 1:])
                out[nm] = c * e
        return MultiPoly._raw(out, self.registry)

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; raises :class:`InputError` otherwise."""
        divisor, reg = self._coerce(divisor)
        if divisor is None or not divisor.terms:
            raise ZeroDivisionError("exact division by zero polynomial")
        lm, lc = divisor.leading_term()
        rem = dict(self.terms)
        quot = {}
        key = self._sort_key
        while rem:
            m = max(rem, key=key)
            if not _mono_divides(lm, m):
                raise InputError(f"{divisor} does not divide {self}")
            qm = _mono_sub(m, lm)
            qc = rem[m] / lc
            quot[qm] = qc
            for dm, dc in divisor.terms.items():
                tm = _mono_mul(qm, dm)
                v = rem.get(tm, 0) - qc * dc
                if v:
                    rem[tm] = v
                else:
                    rem.pop(tm, None)
        return MultiPoly._raw(quot, reg)

    def reduce_power(self, var: str, power: int, replacement: MultiPoly) -> MultiPoly:
        """Rewrite ``var**power -> replacement`` until deg_var < power."""
        if replacement.degree(var) >= power:
            raise InputError("rewrite rule would not terminate")
        parts = self.collect(var)
        if not parts or max(parts) < power:
            return self
        v = MultiPoly.var(var, self.registry)
        result = MultiPoly.const(0, self.registry)
        for e in sorted(parts, reverse=True):
            q, r = divmod(e, power)
            term = parts[e] * v ** r
            if q:
                term = term * replacement ** q
            result = result + term
        return result.reduce_power(var, power, replacement)

    def __call__(self, **bindings):
        return substitute(self, bindings)

    # -- text --------------------------------------------------------------
    def _mono_str(self, mono):
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(self.registry.names[i])
            elif e:
                parts.append(f"{self.registry.names[i]}^{e}")
        return "*".join(parts)

    def __str__(self):
        return _format_terms(
            [(self._mono_str(m), c) for m, c in self.sorted_terms()]
        )

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def _format_terms(pairs):
    """pairs of (monomial text, coefficient) -> '2*x^2 - y + 1/2'"""
    if not pairs:
        return "0"
    out = []
    for k, (mono, c) in enumerate(pairs):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


class LaurentPoly:
    """``num / den`` where ``den`` is a monomial; canonical up to cancellation.

    Only monomial denominators occur, so this is the localisation at the
    variables that actually appear in ``den``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den=()):
        den = _strip(tuple(den))
        if any(e < 0 for e in den):
            raise InputError("denominator exponents must be non-negative")
        if not num.terms:
            den = ()
        elif den:
            # cancel the common monomial factor
            common = list(den)
            for m in num.terms:
                for i in range(len(common)):
                    if common[i]:
                        common[i] = min(common[i], m[i] if i < len(m) else 0)
            common = _strip(tuple(common))
            if common:
                num = MultiPoly._raw(
                    {_mono_sub(m, common): c for m, c in num.terms.items()}, num.registry
                )
                den = _mono_sub(den, common)
        self.num = num
        self.den = den

    @property
    def registry(self):
        return self.num.registry

    @classmethod
    def from_poly(cls, f: MultiPoly) -> LaurentPoly:
        return cls(f, ())

    @classmethod
    def monomial(cls, exps: dict, coeff=1, registry: Registry = DEFAULT) -> LaurentPoly:
        """Monomial with possibly negative exponents, e.g. ``{'t': -1}``."""
        num, den = [0] * len(registry), [0] * len(registry)
        for name, e in exps.items():
            i = registry.index(name)
            if e >= 0:
                num[i] = e
            else:
                den[i] = -e
        return cls(MultiPoly({tuple(num): coeff}, registry), tuple(den))

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, MultiPoly):
            return LaurentPoly(other)
        if isinstance(other, (int, Rational)):
            return LaurentPoly(MultiPoly.const(other, self.registry))
        return None

    def _lift(self, den):
        extra = _mono_sub(den, self.den)
        return self.num * MultiPoly._raw({extra: Fraction(1)}, self.registry)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = tuple(max(i, j) for i, j in zip_longest(self.den, other.den, fillvalue=0))
        return LaurentPoly(self._lift(den) + other._lift(den), den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPoly(self.num * other.num, _mono_mul(self.den, other.den))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.num.terms) != 1:
                raise InputError("only monomials can be inverted")
            (m, c), = self.num.terms.items()
            inv = LaurentPoly(MultiPoly._raw({self.den: 1 / c}, self.registry), m)
            return inv ** (-n)
        return LaurentPoly(self.num ** n, tuple(e * n for e in self.den))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return not self.den

    def laurent_terms(self):
        """Iterate (signed exponent tuple, coefficient)."""
        for m, c in self.num.terms.items():
            yield tuple(i - j for i, j in zip_longest(m, self.den, fillvalue=0)), c

    def split(self):
        """(polynomial part, negative-exponent residue)."""
        poly, rest = {}, {}
        for m, c in self.num.terms.items():
            if _mono_divides(self.den, m):
                poly[_mono_sub(m, self.den)] = c
            else:
                rest[m] = c
        return (
            MultiPoly._raw(poly, self.registry),
            LaurentPoly(MultiPoly._raw(rest, self.registry), self.den),
        )

    def to_poly(self) -> MultiPoly:
        poly, residue = self.split()
        if residue:
            raise ResidueError(residue)
        return poly

    def derivative(self, var: str) -> LaurentPoly:
        i = self.registry.index(var)
        e = self.den[i] if i < len(self.den) else 0
        if not e:
            return LaurentPoly(self.num.derivative(var), self.den)
        v = MultiPoly.var(var, self.registry)
        num = self.num.derivative(var) * v - e * self.num
        den = list(self.den)
        den[i] += 1
        return LaurentPoly(num, tuple(den))

    def collect(self, var: str) -> dict:
        """Map signed power of ``var`` -> coefficient (a LaurentPoly free of ``var``)."""
        i = self.registry.index(var)
        shift = self.den[i] if i < len(self.den) else 0
        rest_den = _strip(self.den[:i] + (0,) + self.den[i + 1:]) if shift else self.den
        out = {}
        for e, c in self.num.collect(var).items():
            out[e - shift] = LaurentPoly(c, rest_den)
        return out

    def __str__(self):
        names = self.registry.names
        pairs = []
        for m, c in sorted(
            self.laurent_terms(),
            key=lambda mc: (sum(mc[0]), mc[0] + (0,) * (len(names) - len(mc[0]))),
            reverse=True,
        ):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            pairs.append((mono, c))
        return _format_terms(pairs)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def substitute(f, bindings: dict, *, polynomial: bool = True):
    """Compose ``f`` with ``bindings`` (name -> MultiPoly, LaurentPoly or number).

    Unbound variables are left fixed.  With ``polynomial=True`` the result
    must clear to a polynomial (:class:`ResidueError` otherwise); with
    ``polynomial=False`` a :class:`LaurentPoly` is returned and the caller may
    :meth:`LaurentPoly.split` it.
    """
    if isinstance(f, LaurentPoly):
        num, den = f.num, f.den
    else:
        num, den = f, ()
    reg = num.registry
    vals = {}
    laurent = bool(den)
    for name, val in bindings.items():
        reg.index(name)
        if isinstance(val, (int, Rational, str)):
            val = MultiPoly.const(as_fraction(val), reg)
        if isinstance(val, LaurentPoly):
            if val.is_polynomial():
                val = val.num
            else:
                laurent = True
        elif not isinstance(val, MultiPoly):
            raise InputError(f"cannot bind {name} to {val!r}")
        reg = reg.join(val.registry)
        vals[name] = val

    one = LaurentPoly(MultiPoly.const(1, reg)) if laurent else MultiPoly.const(1, reg)
    images = []
    for i, name in enumerate(num.registry.names):
        v = vals.get(name)
        if v is None:
            v = MultiPoly.var(name, reg)
        if laurent and not isinstance(v, LaurentPoly):
            v = LaurentPoly(v)
        images.append(v)
    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = one if e == 0 else images[i] ** e
        return cache[key]

    # accumulate in place: numerators grouped by denominator
    acc: dict = {}
    for m, c in num.terms.items():
        term = one * c
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        tnum, tden = (term.num, term.den) if laurent else (term, ())
        bucket = acc.setdefault(tden, {})
        for mono, coeff in tnum.terms.items():
            v = bucket.get(mono, 0) + coeff
            if v:
                bucket[mono] = v
            else:
                bucket.pop(mono, None)
    total = LaurentPoly(MultiPoly.const(0, reg)) if laurent else MultiPoly.const(0, reg)
    for tden, bucket in acc.items():
        part = MultiPoly._raw(bucket, reg)
        total = total + (LaurentPoly(part, tden) if laurent else part)
    if den:
        inv = one
        for i, e in enumerate(den):
            if e:
                inv = inv * (images[i] ** (-e) if isinstance(images[i], LaurentPoly)
                             else LaurentPoly(images[i]) ** (-e))
        total = total * inv
    if not laurent:
        return total if polynomial else LaurentPoly(total)
    return total.to_poly() if polynomial else total


def divmod_in_var(f: MultiPoly, g: MultiPoly, var: str):
    """Division of ``f`` by ``g`` viewed as polynomials in ``var``.

    The leading coefficient of ``g`` in ``var`` must divide every coefficient
    that is met (always true when it is a nonzero constant).  Returns
    ``(q, r)`` with ``f = q*g + r`` and ``deg_var r < deg_var g``.
    """
    dg = g.degree(var)
    if dg < 0:
        raise ZeroDivisionError("division by zero polynomial")
    lc = g.collect(var)[dg]
    v = MultiPoly.var(var, f.registry.join(g.registry))
    q = MultiPoly.const(0, v.registry)
    r = f
    while r.degree(var) >= dg:
        dr = r.degree(var)
        lead = r.collect(var)[dr]
        if lc.is_constant():
            factor = lead / lc.constant_value()
        else:
            factor = lead.exact_div(lc)
        step = factor * v ** (dr - dg)
        q = q + step
        r = r - step * g
    return q, r
