import pytest
from hypothesis import given, settings

from os_dulac.coeffs import CRat
from os_dulac.darboux import (
    check_integrating_factor,
    check_inverse_integrating_factor,
    cofactor_of,
    conjugate_curve,
    curve_count_hint,
    darboux_first_integral,
    dulac_cofactor_crosscheck,
    exponential_factor_cofactor,
    pointwise_dulac_cofactor,
    product_curve,
    verify_first_integral,
)
from os_dulac.exceptions import (
    ConstantInputError,
    DegreeBoundViolatedError,
    NoNontrivialRelationError,
    NotExponentialFactorError,
    NotInvariantError,
    ZeroPolynomialError,
)
from os_dulac.geometry import Box2
from os_dulac.multiplier import ExpPolyMultiplier
from os_dulac.parser import parse_poly
from os_dulac.poly import Poly
from os_dulac.vfield import VectorField

from .strategies import polys

x, y = Poly.x(), Poly.y()


def test_cofactors(saddle, circle):
    assert cofactor_of(x, saddle).k == 1
    assert cofactor_of(y, saddle).k == -1
    curve = cofactor_of(parse_poly("x^2 + y^2 - 1"), circle)
    assert curve.k == parse_poly("-2*x^2 - 2*y^2")
    assert not curve.warnings


def test_not_invariant(saddle):
    with pytest.raises(NotInvariantError) as e:
        cofactor_of(x + 1, saddle)
    assert e.value.remainder == -1
    with pytest.raises(ConstantInputError):
        cofactor_of(Poly.constant(2), saddle)


def test_singular_curve_warning():
    X = VectorField(parse_poly("x + 1"), parse_poly("y"))
    curve = cofactor_of(parse_poly("(x + 1)^2 - y^2"), X)
    assert curve.k == 2
    assert not curve.warnings
    # the double line is singular along x = y, where the field does not vanish
    Y = VectorField(Poly.constant(1), Poly.constant(1))
    double = cofactor_of(parse_poly("(x - y)^2"), Y)
    assert double.k.is_zero
    assert double.warnings


def test_complex_curve(rotation):
    curve = cofactor_of(x + y * CRat(0, 1), rotation)
    assert curve.k == Poly.constant(CRat(0, 1))
    H = darboux_first_integral([curve, conjugate_curve(curve)])
    assert H.exponents == (1, 1)
    assert H.is_first_integral


def test_complex_exponents():
    focus = VectorField(parse_poly("x - y"), parse_poly("x + y"))
    curve = cofactor_of(x + y * CRat(0, 1), focus)
    assert curve.k == Poly.constant(CRat(1, 1))
    H = darboux_first_integral([curve, conjugate_curve(curve)])
    assert H.is_first_integral
    assert any(isinstance(e, CRat) for e in H.exponents)


def test_saddle_and_node_integrals(saddle):
    H = darboux_first_integral([cofactor_of(x, saddle), cofactor_of(y, saddle)])
    assert H.exponents == (1, 1)
    assert str(H) == "x * y"

    node = VectorField(x, y * 2)
    H = darboux_first_integral([cofactor_of(x, node), cofactor_of(y, node)])
    assert H.exponents == (2, -1)
    assert str(H) == "x^2 * y^(-1)"


def test_no_relation(saddle):
    with pytest.raises(NoNontrivialRelationError):
        darboux_first_integral([cofactor_of(x, saddle)])
    with pytest.raises(NoNontrivialRelationError):
        darboux_first_integral([])


def test_exponential_factors():
    factor = exponential_factor_cofactor(y, Poly.constant(1), VectorField(x, Poly.constant(1)))
    assert factor.k == 1
    assert str(factor) == "exp(y)"
    with pytest.raises(DegreeBoundViolatedError):
        exponential_factor_cofactor(y, Poly.constant(1), VectorField(x, y))
    with pytest.raises(NotExponentialFactorError):
        exponential_factor_cofactor(Poly.constant(1), x, VectorField(Poly.constant(1), y))
    with pytest.raises(ZeroPolynomialError):
        exponential_factor_cofactor(x, Poly(), VectorField(x, y))


def test_integral_with_exponential_factor():
    # X = (1, y): y exp(-x) is constant along orbits
    X = VectorField(Poly.constant(1), y)
    curve = cofactor_of(y, X)
    factor = exponential_factor_cofactor(x, Poly.constant(1), X)
    H = darboux_first_integral([curve], [factor])
    assert H.exponents == (1, -1)
    assert H.total_cofactor.is_zero


def test_integrating_factors(rotation, node):
    assert check_integrating_factor(Poly.constant(1), rotation).is_zero
    assert check_integrating_factor(Poly.constant(1), node).symbolic_residual == 2
    X = VectorField(Poly.constant(1), Poly.constant(1))
    B = ExpPolyMultiplier(y * -2, Poly.constant(1))
    assert check_integrating_factor(B, X).symbolic_residual == -2


def test_inverse_integrating_factors(node):
    assert check_inverse_integrating_factor(x * x + y * y, node).is_zero
    assert check_inverse_integrating_factor(x, node).symbolic_residual == -x
    with pytest.raises(ZeroPolynomialError):
        check_inverse_integrating_factor(Poly(), node)


def test_curve_count_hint():
    hint = curve_count_hint(3, 4)
    assert hint.needed == 7
    assert not hint.enough
    assert "7" in str(hint)
    assert curve_count_hint(1, 2).enough


def test_verify_saddle_integral(saddle):
    H = darboux_first_integral([cofactor_of(x, saddle), cofactor_of(y, saddle)])
    report = verify_first_integral(H, saddle, trajectories=4, t_span=3.0)
    assert report.is_zero
    assert report.trajectories_checked == 4
    assert report.numeric_max_drift < 1e-6


def test_verify_complex_integral(rotation):
    curve = cofactor_of(x + y * CRat(0, 1), rotation)
    H = darboux_first_integral([curve, conjugate_curve(curve)])
    report = verify_first_integral(H, rotation, trajectories=3, t_span=10.0, workers=2)
    assert report.numeric_max_drift < 1e-6


def test_drift_detects_wrong_exponents(node):
    H = darboux_first_integral(
        [cofactor_of(x, node), cofactor_of(y, node)]
    )
    report = verify_first_integral(H, node, trajectories=2, t_span=1.0, box=Box2(1, 2, 1, 2))
    assert report.numeric_max_drift < 1e-6
    wrong = darboux_first_integral(
        [cofactor_of(x, VectorField(x, y * 2)), cofactor_of(y, VectorField(x, y * 2))]
    )
    drifted = verify_first_integral(wrong, node, trajectories=2, t_span=1.0, box=Box2(1, 2, 1, 2))
    assert drifted.numeric_max_drift > 0.1


def test_pointwise_dulac_cofactor(node):
    B = parse_poly("(x^2 + y^2)/4")
    assert pointwise_dulac_cofactor(B, node, (0.3, -0.7)) == pytest.approx(2.0)
    report = dulac_cofactor_crosscheck(B, node, samples=20)
    assert report.is_zero
    assert report.trajectories_checked == 20
    assert report.numeric_max_drift < 1e-9


@pytest.mark.slow
@given(polys(max_degree=2, max_terms=4), polys(max_degree=2, max_terms=4))
@settings(max_examples=1000, deadline=None)
def test_cofactors_add_under_products(a, b):
    X = VectorField(x * a, y * b)
    fx, fy = cofactor_of(x, X), cofactor_of(y, X)
    assert fx.k == a
    assert fy.k == b
    assert cofactor_of(x * y, X).k == product_curve(fx, fy).k == a + b
