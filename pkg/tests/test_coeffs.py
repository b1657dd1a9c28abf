from fractions import Fraction

import pytest

from os_dulac.coeffs import CRat, coerce, format_coefficient, format_rational, parse_rational


def test_crat_collapses_to_fraction():
    z = CRat(1, 2)
    assert z * z.conjugate() == Fraction(5)
    assert isinstance(z * z.conjugate(), Fraction)
    assert z + CRat(0, -2) == 1
    assert coerce(CRat(Fraction(1, 2), 0)) == Fraction(1, 2)


def test_crat_division():
    z = CRat(1, 2)
    assert z / z == 1
    assert 1 / CRat(0, 1) == CRat(0, -1)
    with pytest.raises(ZeroDivisionError):
        z / CRat(0, 0)


@pytest.mark.parametrize(
    "text,value",
    [("1/2", Fraction(1, 2)), ("0.25", Fraction(1, 4)), ("-3", Fraction(-3)), ("1e-3", Fraction(1, 1000))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


def test_parse_rational_error():
    with pytest.raises(ValueError):
        parse_rational("a")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_format():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    assert format_coefficient(Fraction(1, 2)) == "1/2"
    assert format_coefficient(CRat(1, -1)) == "1 - 1*I"
    assert format_coefficient(CRat(0, 1)) == "1*I"
