from fractions import Fraction

import numpy as np
import pytest

from os_dulac.bernstein import Outcome
from os_dulac.dulac import OPEN_BOX_NOTE, Conclusion, bendixson, certify_dulac
from os_dulac.flow import CrossingDirection, Section, detect_limit_cycle
from os_dulac.geometry import Box2
from os_dulac.multiplier import ExpPolyMultiplier, sign_carrier
from os_dulac.parser import parse_multiplier, parse_poly
from os_dulac.poly import Poly
from os_dulac.vfield import VectorField


def test_bendixson_strip(vdp):
    dulac = bendixson(vdp, Box2.parse("-0.95:0.95,-4:4"))
    assert dulac.conclusion is Conclusion.NO_PERIODIC_ORBIT
    assert dulac.certified
    assert dulac.certificate.carrier == parse_poly("1 - x^2")
    assert dulac.certificate.min_coefficient == Fraction(39, 400)
    assert OPEN_BOX_NOTE in dulac.notes


def test_bendixson_fails_across_cycle(vdp):
    dulac = bendixson(vdp, Box2(-3, 3, -3, 3))
    assert dulac.conclusion is Conclusion.NOT_CERTIFIED
    assert dulac.certificate.kind is Outcome.VIOLATION
    assert dulac.certificate.outcome.value == -8


def test_polynomial_multiplier(node):
    dulac = certify_dulac(node, parse_poly("x^2 + y^2 + 1"), Box2(-2, 2, -2, 2))
    assert dulac.certified
    assert dulac.certificate.carrier == parse_poly("4*x^2 + 4*y^2 + 2")


def test_exponential_multiplier():
    # Div X = -1 everywhere, exp(2x) turns it around
    X = VectorField(parse_poly("1"), parse_poly("-y"))
    B = parse_multiplier("exp(2*x)")
    assert isinstance(B, ExpPolyMultiplier)
    assert sign_carrier(B, X) == parse_poly("1")
    assert certify_dulac(X, B, Box2(-1, 1, -1, 1)).certified


def test_multiplier_values():
    B = parse_multiplier("exp(x)*(y + 2)")
    assert B(0.0, 1.0) == 3.0
    assert abs(B(1.0, 0.0) - 2 * 2.718281828459045) < 1e-12


@pytest.mark.slow
def test_certified_strip_misses_the_cycle():
    rng = np.random.default_rng(7)
    x, y = Poly.x(), Poly.y()
    section = Section((0, 0), (0, 1), CrossingDirection.NEGATIVE)
    for _ in range(20):
        mu, s = (Fraction(int(v), 10) for v in rng.integers(5, 21, 2))
        X = VectorField(y, -x + mu * (1 - x * x / (s * s)) * y)
        box = Box2(-Fraction(19, 20) * s, Fraction(19, 20) * s, -5 * s, 5 * s)
        assert bendixson(X, box).certified
        cycle = detect_limit_cycle(X, section, (2 * float(s), 0))
        assert 1.9 * s <= cycle.amplitude_x <= 2.1 * s
        assert not cycle.inside(box)
