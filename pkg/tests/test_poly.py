from fractions import Fraction

import pytest
from hypothesis import given, settings

from os_dulac.coeffs import CRat
from os_dulac.exceptions import ZeroPolynomialError
from os_dulac.geometry import Point
from os_dulac.parser import parse_poly
from os_dulac.poly import Axis, Poly, evaluate, poly_divide
from os_dulac.vfield import VectorField, div_product, lie_derivative

from .strategies import nonzero_polys, polys, small_rationals

x, y = Poly.x(), Poly.y()


def test_canonical_str():
    assert str(parse_poly("(x+y)^2")) == "x^2 + 2*x*y + y^2"
    assert str(parse_poly("y*x + x^2 - 1/2")) == "x^2 + x*y - 1/2"
    assert str(parse_poly("1 - x")) == "-x + 1"
    assert str(Poly()) == "0"
    assert str(x * CRat(0, 1) + 1) == "(1*I)*x + 1"


def test_no_stored_zeros():
    p = x + y - x
    assert p == y
    assert dict(p.terms) == {(0, 1): 1}
    assert (x - x).is_zero
    assert (x - x).degree == -1


def test_degree_and_derive():
    p = parse_poly("x^3*y + 2*y^2 - 5")
    assert p.degree == 4
    assert p.degree_x == 3
    assert p.degree_y == 2
    assert p.derive(Axis.X) == parse_poly("3*x^2*y")
    assert p.derive("y") == parse_poly("x^3 + 4*y")


def test_divide_exact():
    q, r = poly_divide(x * x - y * y, x - y)
    assert q == x + y
    assert r.is_zero


def test_divide_remainder():
    q, r = poly_divide(x, x + 1)
    assert q == 1
    assert r == -1


def test_divide_by_zero():
    with pytest.raises(ZeroPolynomialError):
        poly_divide(x, Poly())


def test_translate_and_affine():
    p = x * x + y
    assert p.translate(1, 0) == parse_poly("x^2 + 2*x + 1 + y")
    assert p.affine(Fraction(-1), 2, 0, 3) == parse_poly("(-1 + 2*x)^2 + 3*y")


def test_evaluate():
    p = parse_poly("x^2 - 2*x*y + 1/3")
    assert p.evaluate_exact(Fraction(1, 2), 2) == Fraction(1, 4) - 2 + Fraction(1, 3)
    assert p(0.5, 2.0) == pytest.approx(float(p.evaluate_exact(Fraction(1, 2), 2)))

    assert evaluate(x * x + y * y, Point(3, 4)) == 25
    assert evaluate(p, Point(0, 0)) == pytest.approx(1 / 3)
    v = evaluate(1 - x * x, Point(0.95, 0))
    assert v.real == pytest.approx(0.0975)
    assert v.imag == 0


def test_conjugate():
    f = x + y * CRat(0, 1)
    assert f.conjugate() == x - y * CRat(0, 1)
    assert f * f.conjugate() == x * x + y * y
    assert (f * f.conjugate()).is_real


@given(polys(), polys(), polys())
@settings(max_examples=200)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - q) + q == p


@given(nonzero_polys(), polys())
@settings(max_examples=200)
def test_division_identity(d, n):
    q, r = poly_divide(n, d)
    assert q * d + r == n
    assert poly_divide(n * d, d) == (n, Poly())


@given(polys(), polys(), polys())
@settings(max_examples=1000, deadline=None)
def test_leibniz(b, p, q):
    X = VectorField(p, q)
    direct = (b * p).derive(Axis.X) + (b * q).derive(Axis.Y)
    assert div_product(b, X) == direct
    assert div_product(b, X) == b * X.divergence + lie_derivative(b, X)


@given(polys(), polys(), polys(), polys())
@settings(max_examples=1000, deadline=None)
def test_lie_derivative_product(f, g, p, q):
    X = VectorField(p, q)
    assert lie_derivative(f * g, X) == f * lie_derivative(g, X) + g * lie_derivative(f, X)


@given(polys(max_degree=2), small_rationals, small_rationals)
def test_translate_evaluates_shifted(p, a, b):
    assert p.translate(a, b).evaluate_exact(0, 0) == p.evaluate_exact(a, b)
