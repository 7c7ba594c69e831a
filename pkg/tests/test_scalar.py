from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicalc.scalar import ONE, ZERO, Scalar, as_scalar, parse_scalar

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
scalars = st.builds(Scalar, fractions, fractions)


def test_parse_forms():
    assert parse_scalar("3") == Scalar(3)
    assert parse_scalar("-1/2") == Scalar(Fraction(-1, 2))
    assert parse_scalar("1/2+3/4 i") == Scalar(Fraction(1, 2), Fraction(3, 4))
    assert parse_scalar("1-2 i") == Scalar(1, -2)
    assert parse_scalar("-5/3 i") == Scalar(0, Fraction(-5, 3))


@pytest.mark.parametrize("bad", ["", "x", "1.5", "1+i", "2 j", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@given(scalars)
def test_text_round_trip(x):
    assert parse_scalar(str(x)) == x


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO
    if x:
        assert x * x.inverse() == ONE
        assert (y / x) * x == y


def test_i_squared():
    i = Scalar(0, 1)
    assert i * i == Scalar(-1)
    assert i.conjugate() == Scalar(0, -1)
    assert not i.is_real()


def test_mixed_with_python_numbers():
    assert Scalar(1, 1) + 1 == Scalar(2, 1)
    assert 2 * Scalar(1, 1) == Scalar(2, 2)
    assert Scalar(3) == 3
    assert Scalar(Fraction(1, 3)) == Fraction(1, 3)
    assert hash(Scalar(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert 1 - Scalar(1) == ZERO


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_as_scalar():
    assert as_scalar("2/4") == Scalar(Fraction(1, 2))
    with pytest.raises(TypeError):
        as_scalar(1.5)
    with pytest.raises(TypeError):
        as_scalar(1j)
