from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from triality_lab.errors import FieldMismatch
from triality_lab.scalars import GF, QSqrt3, SQRT3, format_scalar, parse_scalar, reduce_mod, sign

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
quads = st.builds(QSqrt3, rationals, rationals)


@given(quads, quads, quads)
def test_qsqrt3_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(quads)
def test_qsqrt3_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert a / a == QSqrt3(1)


def test_sqrt3_squared():
    assert SQRT3 * SQRT3 == 3
    assert (1 + SQRT3) * (1 - SQRT3) == -2


@given(rationals, rationals)
def test_embedding_of_rationals(p, q):
    assert QSqrt3(p) + q == QSqrt3(p + q)
    assert QSqrt3(p) * q == QSqrt3(p * q)


@given(quads)
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@pytest.mark.parametrize("text", ["3/8", "-2", "1/2+3/4*r3", "-r3", "r3", "5-r3"])
def test_parse_format_fixed_points(text):
    assert format_scalar(parse_scalar(text)) == text


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatch):
        GF(1, 2) + GF(1, 3)
    with pytest.raises(FieldMismatch):
        GF(1, 3) + Fraction(1, 2)
    with pytest.raises(FieldMismatch):
        SQRT3 * GF(2, 3)


def test_prime_field_arithmetic():
    for p in (2, 3):
        for v in range(1, p):
            assert GF(v, p) * GF(v, p).inverse() == 1
    assert GF(2, 3) + GF(2, 3) == GF(1, 3)
    assert reduce_mod(Fraction(3, 8), 3) == 0
    assert reduce_mod(Fraction(1, 2), 3) == 2
    with pytest.raises(ZeroDivisionError):
        reduce_mod(Fraction(1, 3), 3)


@given(quads)
def test_sign_agrees_with_square_comparison(a):
    # float comparison only away from zero
    approx = float(a.r) + float(a.s) * 3**0.5
    if abs(approx) > 1e-6:
        assert sign(a) == (1 if approx > 0 else -1)
