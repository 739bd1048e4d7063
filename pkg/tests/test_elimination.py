from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from triality_lab.elimination import (
    poly_gcd,
    rational_roots,
    resultant,
    roots_in_qsqrt3,
    same_up_to_constant,
    squarefree_part,
)
from triality_lab.errors import DegenerateInput, ZeroPolynomial
from triality_lab.poly import MultiPoly, gens
from triality_lab.scalars import SQRT3, QSqrt3


def test_resultant_examples():
    x, a, b = gens("x a b")
    assert resultant(x**2 - 2, x - 1, "x") == MultiPoly.const(-1, ("x", "a", "b"))
    assert same_up_to_constant(resultant(x - a, x - b, "x"), a - b)
    assert resultant(x - a, x - b, "x") == a - b


def test_resultant_zero_input():
    x, y = gens("x y")
    with pytest.raises(DegenerateInput):
        resultant(x * 0, x + y, "x")


coeff = st.integers(-3, 3)


@settings(max_examples=30, deadline=None)
@given(st.lists(coeff, min_size=2, max_size=4), st.lists(coeff, min_size=2, max_size=4), coeff)
def test_planted_common_factor_gives_zero(p, q, shift):
    x, y = gens("x y")

    def build(cs):
        return sum((c * x**i * (y + 1) ** (len(cs) - 1 - i) for i, c in enumerate(cs)), x * 0)

    common = x - y + shift
    f, g = build(p) * common, build(q) * common
    if f.degree("x") > 0 and g.degree("x") > 0:
        assert resultant(f, g, "x").is_zero()


@settings(max_examples=30, deadline=None)
@given(st.lists(coeff, min_size=2, max_size=4), st.lists(coeff, min_size=2, max_size=4))
def test_resultant_matches_sympy(p, q):
    x, y = gens("x y")
    f = sum((c * x**i * (y**i + 1) for i, c in enumerate(p)), x * 0) + x ** len(p)
    g = sum((c * x**i * (y - i) for i, c in enumerate(q)), x * 0) + x ** len(q)
    sx, sy = sympy.symbols("x y")
    sf = sympy.sympify(str(f).replace("^", "**"))
    sg = sympy.sympify(str(g).replace("^", "**"))
    ours = sympy.sympify(str(resultant(f, g, "x")).replace("^", "**"))
    assert sympy.expand(ours - sympy.resultant(sf, sg, sx)) == 0


def test_squarefree_examples():
    x, y = gens("x y")
    assert same_up_to_constant(squarefree_part((x - 1) ** 2), x - 1)
    assert same_up_to_constant(squarefree_part(x**2 * y), x * y)
    f = (x - y) ** 3 * (x + y) * (x**2 + y**2 + 1) ** 2
    assert same_up_to_constant(squarefree_part(f), (x - y) * (x + y) * (x**2 + y**2 + 1))
    with pytest.raises(ZeroPolynomial):
        squarefree_part(x * 0)


def test_gcd():
    x, y = gens("x y")
    g = x**2 - y
    assert same_up_to_constant(poly_gcd(g * (x + 1), g * (y - 3)), g)


def test_roots():
    (x,) = gens("x")
    assert sorted(rational_roots((x - Fraction(1, 2)) * (x + 3) * (x**2 + 1))) == [-3, Fraction(1, 2)]
    roots = roots_in_qsqrt3((x**2 - 3) * (x - 2))
    assert set(roots) == {QSqrt3(2), SQRT3, -SQRT3}
