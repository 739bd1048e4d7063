"""Resultants, polynomial gcd and squarefree parts.

Gcds use the subresultant pseudo-remainder sequence in the variable of
least degree; contents are gcds of coefficients one variable down, so
everything stays polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import isqrt, lcm

from .errors import DegenerateInput, ZeroPolynomial
from .linalg import det
from .poly import MultiPoly
from .scalars import QSqrt3

__all__ = [
    "sylvester_matrix",
    "resultant",
    "poly_gcd",
    "squarefree_part",
    "rational_roots",
    "roots_in_qsqrt3",
    "same_up_to_constant",
]


def _univariate_coeffs(p: MultiPoly, var: str) -> list:
    """Coefficients [c_0, ..., c_n] of ``p`` seen as a polynomial in ``var``."""
    parts = p.coeffs_in(var)
    n = max(parts) if parts else -1
    zero = MultiPoly(p.vars, {}, p.weights)
    return [parts.get(k, zero) for k in range(n + 1)]


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list:
    p, q = p._align(q)
    a = _univariate_coeffs(p, var)[::-1]
    b = _univariate_coeffs(q, var)[::-1]
    m, n = len(a) - 1, len(b) - 1
    zero = MultiPoly(p.vars, {}, p.weights)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Res_var(p, q) as the determinant of the Sylvester matrix."""
    if p.is_zero() or q.is_zero():
        raise DegenerateInput("resultant with a zero polynomial")
    p, q = p._align(q)
    m, n = p.degree(var), q.degree(var)
    if m == 0:
        return p**n
    if n == 0:
        return q**m
    d = det(sylvester_matrix(p, q, var))
    out = MultiPoly.coerce(d, p.vars)
    return out.with_vars(p.vars, p.weights)


# -- gcd -------------------------------------------------------------------


def _main_var(p: MultiPoly, q: MultiPoly):
    """Variable of least positive degree; keeps the remainder sequence short."""
    best = None
    for v in p.vars:
        dp, dq = p.degree(v), q.degree(v)
        if dp > 0 or dq > 0:
            d = max(dp, dq)
            if best is None or d < best[0]:
                best = (d, v)
    return None if best is None else best[1]


def _lead(p: MultiPoly, var: str) -> MultiPoly:
    return p.coeffs_in(var)[p.degree(var)]


def _content(p: MultiPoly, var: str) -> MultiPoly:
    coeffs = sorted((c for c in p.coeffs_in(var).values() if not c.is_zero()), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, c)
    return _normalize(g) if not g.is_constant() else MultiPoly.const(1, p.vars, p.weights)


def _pseudo_rem(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """lc(q)^(deg p - deg q + 1) * p reduced modulo q."""
    dq = q.degree(var)
    lq = _lead(q, var)
    x = MultiPoly.var(var, p.vars, p.weights)
    r = p
    steps = p.degree(var) - dq + 1
    while not r.is_zero() and r.degree(var) >= dq:
        dr = r.degree(var)
        lr = _lead(r, var)
        r = lq * r - lr * x ** (dr - dq) * q
        steps -= 1
    if steps > 0 and not r.is_zero():
        r = r * lq**steps
    return r


def _normalize(p: MultiPoly) -> MultiPoly:
    return p.monic() if not p.is_zero() else p


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd over a characteristic-zero coefficient field."""
    p, q = p._align(q)
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    var = _main_var(p, q)
    if var is None:
        return MultiPoly.const(1, p.vars, p.weights)
    if p.degree(var) == 0:
        return poly_gcd(p, _content(q, var))
    if q.degree(var) == 0:
        return poly_gcd(_content(p, var), q)
    cp, cq = _content(p, var), _content(q, var)
    c = poly_gcd(cp, cq)
    a, b = p.exact_div(cp), q.exact_div(cq)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    # subresultant remainder sequence
    one = MultiPoly.const(1, p.vars, p.weights)
    g = h = one
    while True:
        delta = a.degree(var) - b.degree(var)
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            break
        if r.degree(var) == 0:
            return _normalize(c)
        a, b = b, r.exact_div(g * h**delta)
        g = _lead(a, var)
        h = (g**delta).exact_div(h ** (delta - 1)) if delta >= 1 else h
    b = b.exact_div(_content(b, var))
    return _normalize(c * b)


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of ``p``, made monic."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of zero")
    g = p
    for v in p.used_vars():
        g = poly_gcd(g, p.diff(v))
    return _normalize(p.exact_div(g))


def same_up_to_constant(p: MultiPoly, q: MultiPoly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return _normalize(p) == _normalize(q)


# -- univariate roots ------------------------------------------------------


def _divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: MultiPoly, var: str | None = None) -> list:
    """Distinct rational roots of a univariate rational polynomial."""
    if p.is_zero():
        raise ZeroPolynomial("roots of zero")
    var = var or (p.used_vars() or (None,))[0]
    if var is None:
        return []
    coeffs = [Fraction(c.constant_value()) for c in _univariate_coeffs(p, var)]
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * num, d)
                if sum(c * r**k for k, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


def _sqrt_rational(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def roots_in_qsqrt3(p: MultiPoly, var: str | None = None) -> list:
    """Distinct roots in Q(sqrt3) of a univariate rational polynomial.

    Rational roots are split off first; the cofactor is solved only when it
    is (after removal) of degree at most two.
    """
    var = var or (p.used_vars() or (None,))[0]
    if var is None:
        return []
    roots = [QSqrt3(r) for r in rational_roots(p, var)]
    x = MultiPoly.var(var, p.vars, p.weights)
    rest = p
    for r in roots:
        lin = x - r.r
        while True:
            try:
                rest = rest.exact_div(lin)
            except ArithmeticError:
                break
    rest = squarefree_part(rest) if rest.degree(var) > 0 else rest
    if rest.degree(var) == 2:
        c = _univariate_coeffs(rest, var)
        c0, c1, c2 = (Fraction(k.constant_value()) for k in c)
        disc = c1 * c1 - 4 * c2 * c0
        s = _sqrt_rational(disc / 3)
        if s is not None:
            for sg in (1, -1):
                roots.append(QSqrt3(-c1 / (2 * c2), sg * s / (2 * c2)))
    return sorted(set(roots), key=lambda z: (z.r, z.s))
