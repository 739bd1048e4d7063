from fractions import Fraction

import pytest

from triality_lab import linalg, roots
from triality_lab.errors import NotAPermutation, NotARoot

S = roots.SIMPLE_ROOTS


def test_weight_map_cycles_simple_roots():
    m = roots.triality_weight_map()
    assert (m(S["A"]), m(S["C"]), m(S["B"]), m(S["Y"])) == (S["C"], S["B"], S["A"], S["Y"])
    assert m.power(3).is_identity()
    assert not m.is_identity()


def test_transpose_is_the_inverse_and_cycles_the_other_way():
    m = roots.triality_weight_map()
    t = roots.WeightMap(tuple(tuple(r) for r in linalg.transpose(m.matrix)))
    assert linalg.matmul(m.matrix, t.matrix) == linalg.identity(4)
    assert t(S["A"]) == S["B"] and t(S["A"]) != S["C"]


def test_lattices():
    assert roots.lattice_check(roots.triality_weight_map()) == {"preserves_SO_lattice": False, "preserves_Spin_lattice": True}
    ident = roots.WeightMap(tuple(tuple(Fraction(x) for x in r) for r in linalg.identity(4)))
    double = roots.WeightMap(tuple(tuple(2 * x for x in r) for r in ident.matrix))
    assert roots.lattice_check(ident) == {"preserves_SO_lattice": True, "preserves_Spin_lattice": True}
    assert roots.lattice_check(double) == {"preserves_SO_lattice": True, "preserves_Spin_lattice": True}


def test_orthogonal():
    assert roots.preserves_inner_product(roots.triality_weight_map())


def test_l2_minus_l4():
    assert roots.simple_root_coordinates(roots.weight(0, 1, 0, -1)) == (0, 1, 0, 1)
    assert roots.root_label(roots.weight(0, 1, 0, -1)) == "BY"


def test_not_a_root():
    with pytest.raises(NotARoot):
        roots.simple_root_coordinates(roots.weight(1, 1, 1, 0))
    with pytest.raises(NotARoot):
        roots.simple_root_coordinates(roots.weight(Fraction(1, 2), Fraction(1, 2), 0, 0))


def test_label_round_trip():
    system = roots.RootSystemD4.build()
    assert len(system.roots) == 24
    assert len(system.positive_roots()) == 12
    for r in system.roots:
        assert roots.root_from_label(roots.root_label(r)) == r


def test_orbits():
    dec = roots.orbits_in_table_order()
    assert [roots.root_label(r) for r in dec.fixed] == ["ABCY", "ABC2Y", "Y"]
    assert [[roots.root_label(r) for r in o] for o in dec.free] == [
        ["A", "C", "B"],
        ["AY", "CY", "BY"],
        ["ABY", "ACY", "BCY"],
    ]


def test_non_permutation_rejected():
    m = roots.WeightMap(((2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    with pytest.raises(NotAPermutation):
        roots.orbit_decomposition(roots.RootSystemD4.build(), m)


def test_restriction_to_fixed_torus():
    # fixed roots restrict to long roots, each free orbit to a single short root
    dec = roots.orbits_in_table_order()
    assert [roots.restrict_to_fixed_torus(r) for r in dec.fixed] == [(1, 2), (2, 1), (1, -1)]
    assert [{roots.restrict_to_fixed_torus(r) for r in o} for o in dec.free] == [{(0, 1)}, {(1, 0)}, {(1, 1)}]
