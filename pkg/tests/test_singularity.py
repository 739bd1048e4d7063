from fractions import Fraction

import pytest
import sympy

from triality_lab import singularity as sg
from triality_lab.elimination import same_up_to_constant
from triality_lab.errors import ActionNotPreserving, NotIsolated, SingularFiber, ZeroParameter
from triality_lab.poly import gens
from triality_lab.scalars import QSqrt3

sx, sy, sa, sb, sc = sympy.symbols("x y a b c")


def sym(p):
    return sympy.sympify(str(p).replace("^", "**").replace("r3", "sqrt(3)"), locals={"a": sa, "b": sb, "c": sc, "x": sx, "y": sy})


@pytest.fixture(scope="module")
def bif():
    return sg.bifurcation()


def test_symmetry():
    assert sg.symmetry_check(sg.germ())
    assert sg.symmetry_check(sg.deformation())
    x, y = gens("x y")
    assert not sg.symmetry_check(x**3 + y**3)


def test_rotation_has_order_three():
    p = (QSqrt3(Fraction(2, 7)), QSqrt3(-1, 1))
    assert sg.rotate_point(p, 3) == p
    assert sg.rotate_point(p, 1) != p


def test_milnor_of_d4():
    x, y = gens("x y")
    la = sg.local_algebra(sg.germ())
    assert la.dimension == 4
    assert sg.spans_local_algebra(sg.germ(), [x**0, x, y, x**2 + y**2])
    assert not sg.spans_local_algebra(sg.germ(), [x**0, x, y, x**2 - y**2])


def test_milnor_weighted():
    x, y = gens("x y")
    assert sg.local_algebra(x**3 + y**2, weights=(2, 3)).dimension == 2


def test_not_isolated():
    x, y = gens("x y")
    with pytest.raises(NotIsolated):
        sg.local_algebra(x**2 * y)
    with pytest.raises(NotIsolated):
        sg.local_algebra(x**3 + y**2)


@pytest.mark.parametrize("n", range(3, 9))
def test_n_lines_milnor(n):
    assert sg.local_algebra(sg.n_lines_germ(n)).dimension == (n - 1) ** 2


def test_morsification_points():
    pts = {p.label: p for p in sg.morsification_data(1)}
    assert sorted(pts) == ["A", "B", "C", "Y"]
    assert pts["Y"].point() == (0, 0) and pts["Y"].value == -4 and pts["Y"].morse_type == "min"
    assert pts["A"].point() == (-2, 0)
    assert pts["B"].point() == (1, QSqrt3(0, -1))
    assert pts["C"].point() == (1, QSqrt3(0, 1))
    for k in "ABC":
        assert pts[k].value == 0 and pts[k].morse_type == "saddle"
    assert sg.rotation_permutation(list(pts.values())) == {"Y": "Y", "A": "B", "B": "C", "C": "A"}


def test_critical_points_against_sympy():
    f = sg.morsification(2)
    sols = sympy.solve([sympy.diff(sym(f), sx), sympy.diff(sym(f), sy)], [sx, sy], dict=True)
    want = {(sympy.nsimplify(s[sx]), sympy.nsimplify(s[sy])) for s in sols}
    got = {(sympy.nsimplify(sym(x)), sympy.nsimplify(sym(y))) for x, y in sg.critical_points(f)}
    assert got == want


def test_morsification_factorization():
    assert sg.morsification(1) == sg.morsification_factored(1)
    assert sg.morsification(3) == sg.morsification_factored(3)
    assert sg.morsification(1) != sg.morsification_factored(1, repeated_factor=True)


def test_zero_parameter():
    with pytest.raises(ZeroParameter):
        sg.morsification_data(0)


def test_quotient_form():
    q = sg.quotient_intersection_form(sg.d4_form())
    assert [list(r) for r in q.matrix] == [[-2, 1], [1, Fraction(-2, 3)]]
    assert sg.cartan_matrix(q) == [[2, -3], [-1, 2]]
    assert sg.is_negative_definite(q.matrix)


def test_trivial_action_leaves_form_unchanged():
    f = sg.d4_form()
    q = sg.quotient_intersection_form(f, action=(0, 1, 2, 3))
    assert q.matrix == f.matrix


def test_action_not_preserving():
    with pytest.raises(ActionNotPreserving):
        sg.quotient_intersection_form(sg.d4_form(), action=(3, 1, 2, 0))
    with pytest.raises(ActionNotPreserving):
        sg.quotient_intersection_form(sg.d4_form(), action=(0, 0, 1, 2))


def test_invariant_ring():
    r = sg.invariant_ring_checks()
    assert r.du_val.is_zero()
    assert r.diagram.is_zero()
    assert all(r.invariant.values())


def test_cubic_family():
    assert all(sg.quotient_cubic_invariants(0, d).j == 0 for d in (1, -2, Fraction(5, 3)))
    with pytest.raises(SingularFiber) as info:
        sg.quotient_cubic_invariants(1, 0)
    assert info.value.discriminant == 0
    assert sg.quotient_cubic_invariants(1, 1).j != sg.quotient_cubic_invariants(1, 2).j


def test_bifurcation_known_points(bif):
    assert bif.evaluate(1, -1, 0) == 0
    assert bif.evaluate(0, 0, 0) == 0
    assert bif.evaluate(1, 0, 0) != 0


def test_bifurcation_deltoid_membership(bif):
    for b, c, _ in sg.deltoid_points(1):
        assert sg.on_bifurcation_set(bif.raw, 1, b, c)
        assert bif.core.evaluate({"a": 1, "b": b, "c": c}) == 0


def test_bifurcation_core_is_invariant(bif):
    assert bif.core_invariant
    assert bif.core.degree() == 8


def test_bifurcation_factors_agree_with_sympy(bif):
    _, factors = sympy.factor_list(sym(bif.raw))
    assert any(sympy.expand(f - sym(bif.core)) == 0 or sympy.expand(f + sym(bif.core)) == 0 for f, _ in factors)
    sqf = sympy.Mul(*[f for f, _ in factors])
    ratio = sympy.cancel(sym(bif.squarefree) / sqf)
    assert ratio.free_symbols == set()


def test_mirror_elimination_contains_core(bif):
    # eliminating y first gives a different raw polynomial but the same invariant core
    fx, fy, hess = sg._bif_system()
    other = sg._eliminate(fx, fy, hess, "y", "x").with_vars(("a", "b", "c"))
    assert not same_up_to_constant(other, bif.raw)
    other.exact_div(bif.core)


def test_n_lines_quotient():
    assert [(r.genus, r.punctures) for r in map(sg.n_lines_quotient_genus, (3, 4, 5))] == [(1, 1), (1, 2), (2, 1)]


def test_representation_comparison():
    assert sg.representation_comparison().ok
    assert not sg.representation_comparison(degree_d=4).ok
    assert sg.degree8_nontrivial_trace() == -1
