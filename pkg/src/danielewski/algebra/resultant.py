"""Sylvester resultants and discriminants with polynomial coefficients.

Normalisation: ``discriminant(f) = (-1)**(n*(n-1)/2) * res(f, f') / lc(f)``
for ``n = deg f``, i.e. the classical discriminant (``b^2 - 4ac`` for a
quadratic).  Callers in this package only use its zero set.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import InputError
from .poly import DEFAULT, MultiPoly
from .upoly import UniPoly


def _coefficients(f: MultiPoly, var: str):
    parts = f.collect(var)
    deg = max(parts)
    zero = MultiPoly.const(0, f.registry)
    return [parts.get(e, zero) for e in range(deg, -1, -1)]  # high to low


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str):
    a, b = _coefficients(f, var), _coefficients(g, var)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MultiPoly.const(0, f.registry.join(g.registry))
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(rows):
    """Fraction-free determinant; every division is exact."""
    n = len(rows)
    if n == 0:
        return MultiPoly.const(1)
    M = [list(r) for r in rows]
    sign = 1
    prev = MultiPoly.const(1, M[0][0].registry)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.const(0, prev.registry)
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pivot - M[i][k] * M[k][j]
                M[i][j] = num if prev == 1 else num.exact_div(prev)
        prev = pivot
    return M[n - 1][n - 1] * sign


def resultant(f, g, var: str | None = None):
    """Res_var(f, g).

    ``UniPoly`` arguments give a :class:`~fractions.Fraction`; ``MultiPoly``
    arguments (coefficients may involve parameters) give a ``MultiPoly``.
    """
    if isinstance(f, UniPoly) and isinstance(g, UniPoly):
        if f.is_zero() or g.is_zero():
            raise InputError("resultant with the zero polynomial")
        v = f.var
        reg = DEFAULT.extend(v)
        return resultant(f.to_multi(reg), g.to_multi(reg), v).constant_value()
    if var is None:
        raise InputError("resultant of MultiPolys needs the elimination variable")
    if f.is_zero() or g.is_zero():
        raise InputError("resultant with the zero polynomial")
    return bareiss_det(sylvester_matrix(f, g, var))


def discriminant(f, var: str | None = None):
    if isinstance(f, UniPoly):
        if f.is_zero():
            raise InputError("discriminant of the zero polynomial")
        reg = DEFAULT.extend(f.var)
        return discriminant(f.to_multi(reg), f.var).constant_value()
    if f.is_zero():
        raise InputError("discriminant of the zero polynomial")
    n = f.degree(var)
    if n < 1:
        raise InputError("discriminant needs positive degree")
    if n == 1:
        return MultiPoly.const(1, f.registry)
    lc = f.collect(var)[n]
    res = resultant(f, f.derivative(var), var)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if lc.is_constant():
        return res * (Fraction(sign) / lc.constant_value())
    return res.exact_div(lc) * sign
