from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from graphaxial.core.exactfield import FieldCtx
from graphaxial.errors import DivisionByZero, ParseError

F5 = FieldCtx.prime(5)
F7 = FieldCtx.prime(7)
Q = FieldCtx.rationals()


def test_parse_fraction_in_prime_field():
    assert F5.parse("1/2") == 3
    assert F7.parse("-1") == 6
    assert F7.parse(" 10 ") == 3


def test_parse_rational():
    assert Q.parse("-1/3") == Fraction(-1, 3)
    assert Q.parse("4/6") == Fraction(2, 3)


@pytest.mark.parametrize("text", ["", "x", "1/", "1.5", "1//2", "--1"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        F7.parse(text)


def test_parse_zero_denominator():
    with pytest.raises(DivisionByZero):
        F5.parse("1/5")
    with pytest.raises(DivisionByZero):
        Q.parse("3/0")


def test_half_in_characteristic_two():
    with pytest.raises(DivisionByZero):
        FieldCtx.prime(2).half()
    assert F5.half() == 3


def test_division_by_zero_is_builtin_error():
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        FieldCtx.prime(9)


def test_render():
    assert Q.render(Fraction(-1, 3)) == "-1/3"
    assert Q.render(Fraction(4)) == "4"
    assert F7.render(5) == "5"


def test_from_option():
    assert FieldCtx.from_option("Q") == Q
    assert FieldCtx.from_option("F7") == F7
    assert FieldCtx.from_option("5") == F5
    with pytest.raises(ParseError):
        FieldCtx.from_option("F8")
    with pytest.raises(ParseError):
        FieldCtx.from_option("R")


def test_json():
    assert FieldCtx.from_json(F7.to_json()) == F7
    assert FieldCtx.from_json({"kind": "Q"}) == Q
    with pytest.raises(ParseError):
        FieldCtx.from_json({"kind": "Fp"})


def test_elements_only_for_finite_fields():
    assert list(F5.elements()) == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        Q.elements()


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=6))
def test_division_inverts_multiplication(b, a):
    assert F7.mul(F7.div(a, b), b) == a


@given(st.fractions(), st.fractions())
def test_rational_field_matches_fraction(a, b):
    assert Q.add(a, b) == a + b
    assert Q.parse(Q.render(Q.mul(a, b))) == a * b
