from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from triality_lab.errors import NotExactDivision
from triality_lab.poly import MultiPoly, gens, parse_poly
from triality_lab.scalars import SQRT3

VARS = ("x", "y", "z")
small = st.integers(-4, 4)
term = st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), small)
polys = st.lists(term, max_size=5).map(lambda ts: MultiPoly(VARS, dict(ts)))


def to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.vars)
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, exps)])
                            for exps, c in ((e, Fraction(c)) for e, c in p.items())))


@given(polys, polys)
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@settings(max_examples=40)
@given(polys, polys)
def test_subs_is_ring_homomorphism(p, q):
    x, y, z = gens("x y z")
    b = {"x": x + 2 * y, "y": y**2 - z, "z": Fraction(1, 3) * x}
    assert (p * q).subs(b) == p.subs(b) * q.subs(b)
    assert (p + q).subs(b) == p.subs(b) + q.subs(b)


def test_identity_substitution():
    x, y = gens("x y")
    f = x**2 + y
    assert f.subs({"x": x, "y": y}) == f


def test_rotation_preserves_cubic():
    x, y = gens("x y")
    f = x**3 - 3 * x * y**2
    half = Fraction(1, 2)
    rx = -half * x - half * SQRT3 * y
    ry = half * SQRT3 * x - half * y
    assert f.subs({"x": rx, "y": ry}) == f


def test_du_val_relation_by_substitution():
    x, y = gens("x y")
    u, v, w = gens("u v w")
    rel = u**2 + v**2 - w**3
    out = rel.subs({"u": x**3 - 3 * x * y**2, "v": y**3 - 3 * x**2 * y, "w": x**2 + y**2})
    assert out.is_zero()


@given(polys, polys)
def test_exact_div_inverts_multiplication(p, q):
    if q:
        assert (p * q).exact_div(q) == p


def test_exact_div_rejects_remainder():
    x, y = gens("x y")
    with pytest.raises(NotExactDivision):
        (x**2 + y).exact_div(x + y)


@pytest.mark.parametrize("text", ["3/8*p1^2-1/2*p2-3*e", "p1", "-1/2*e*p1+1/16*p1^3-1/4*p1*p2+p3", "0"])
def test_text_round_trip(text):
    vars = ("p1", "p2", "p3", "e")
    p = parse_poly(text, vars, weights=(4, 8, 12, 8))
    assert parse_poly(str(p), vars, weights=(4, 8, 12, 8)) == p


def test_canonical_order_is_graded_lex():
    x, y = gens("x y")
    assert str(y + x**2 + x * y + 1) == "x^2+x*y+y+1"


def test_sqrt3_coefficients_print():
    x, y = gens("x y")
    assert str((1 + SQRT3) * x - SQRT3 * y) == "(1+r3)*x-r3*y"


def test_weighted_degree():
    x, y, a = gens("x y a", weights=(1, 1, 1))
    b = MultiPoly.var("b", ("b",), weights=(2,))
    f = (x**3 + a * x**2 + b * x).with_vars(("x", "y", "a", "b"), (1, 1, 1, 2))
    assert f.is_weighted_homogeneous()
    assert f.weighted_degree() == 3
