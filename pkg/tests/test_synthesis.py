from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from os_dulac.exceptions import (
    CertificationFailedError,
    ConstantPotentialError,
    DoubleZeroEigenvalueError,
    EquilibriumEncounteredError,
    InvalidMatrixError,
    NonHyperbolicLinearizationError,
    NotAnEquilibriumError,
    OsDulacError,
    PositivityFailedError,
    SingularAnsatzError,
    TraceZeroError,
    TrajectoryLeftWindowError,
)
from os_dulac.geometry import Box2
from os_dulac.parser import parse_poly
from os_dulac.poly import Poly
from os_dulac.synthesis import (
    B11Reading,
    Matrix2,
    ansatz_determinant_factor,
    flowbox_dulac,
    gradient_coverage,
    gradient_multipliers,
    has_repeated_eigenvalue,
    local_dulac_hyperbolic,
    lyapunov_residual,
    printed_coefficients,
    quadratic_dulac_linear,
    ring_radii,
    spectrum_has_single_zero,
)
from os_dulac.vfield import VectorField, div_product

from .strategies import admissible_matrices, matrices

ZERO = Matrix2(0, 0, 0, 0)


@pytest.mark.parametrize(
    "matrix,expected",
    [
        ("1,0;0,1", (Fraction(1, 4), 0, Fraction(1, 4))),
        ("1,0;0,2", (Fraction(1, 5), 0, Fraction(4, 7))),
        ("1,0;1,1", (Fraction(13, 32), Fraction(3, 8), Fraction(1, 4))),
        ("1,1;2,1", (Fraction(7, 8), Fraction(3, 4), Fraction(5, 16))),
        ("1,2;1,3", (Fraction(3, 16), Fraction(7, 8), Fraction(9, 8))),
    ],
)
def test_quadratic_examples(matrix, expected):
    assert quadratic_dulac_linear(Matrix2.parse(matrix)).coefficients == expected


def test_quadratic_errors():
    with pytest.raises(TraceZeroError):
        quadratic_dulac_linear(Matrix2.parse("0,1;-1,0"))
    with pytest.raises(DoubleZeroEigenvalueError):
        quadratic_dulac_linear(Matrix2.parse("0,1;0,0"))
    with pytest.raises(SingularAnsatzError):
        quadratic_dulac_linear(Matrix2.parse("3,0;0,-1"))


@pytest.mark.parametrize("text", ["1,2,3;4", "1,2;3", "a,b;c,d", "1,2"])
def test_matrix_parse_errors(text):
    with pytest.raises(InvalidMatrixError):
        Matrix2.parse(text)


def test_printed_readings_differ():
    A = Matrix2.parse("1,1;2,1")
    b20, b02, b11 = printed_coefficients(A)
    assert (b20, b11, b02) == quadratic_dulac_linear(A).coefficients
    assert printed_coefficients(A, B11Reading.C_MINUS_3D2)[2] == Fraction(7, 8)


@given(admissible_matrices)
@settings(max_examples=500, deadline=None)
def test_quadratic_identity_is_exact(A):
    B = quadratic_dulac_linear(A)
    X = A.field()
    assert div_product(B.to_poly(), X) == X.norm_squared
    assert lyapunov_residual(A) == ZERO


@given(admissible_matrices)
@settings(max_examples=200, deadline=None)
def test_printed_closed_forms_agree(A):
    b20, b02, b11 = printed_coefficients(A, B11Reading.C2_MINUS_3D2)
    assert (b20, b11, b02) == quadratic_dulac_linear(A).coefficients


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_transpose_succeeds_or_fails_together(A):
    outcomes = []
    for M in (A, A.transpose()):
        try:
            B = quadratic_dulac_linear(M)
        except OsDulacError as e:
            outcomes.append(type(e))
        else:
            outcomes.append(None)
            assert div_product(B.to_poly(), M.field()) == M.field().norm_squared
    assert outcomes[0] is outcomes[1]
    assert A.transpose().transpose() == A


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_ansatz_factor_in_trace_and_determinant(A):
    assert ansatz_determinant_factor(A) == 3 * A.trace ** 2 + 4 * A.det


def test_spectrum_helpers():
    assert spectrum_has_single_zero(Matrix2(1, 0, 0, 0))
    assert not spectrum_has_single_zero(Matrix2(0, 1, 0, 0))
    assert not spectrum_has_single_zero(Matrix2(1, 0, 0, 1))
    assert has_repeated_eigenvalue(Matrix2(1, 0, 0, 1))
    assert has_repeated_eigenvalue(Matrix2(1, 1, 0, 1))
    assert not has_repeated_eigenvalue(Matrix2(1, 0, 0, 2))


def test_gradient_carriers():
    V = parse_poly("x^2 + y^2")
    pairs = {p.label: p for p in gradient_multipliers(V)}
    assert list(pairs) == ["exp(V)", "exp(-V)", "V"]
    assert pairs["exp(V)"].carrier == parse_poly("4 + 4*x^2 + 4*y^2")
    assert pairs["exp(-V)"].carrier == parse_poly("4 - 4*x^2 - 4*y^2")
    assert pairs["V"].carrier == parse_poly("8*x^2 + 8*y^2")


def test_gradient_coverage():
    V = parse_poly("x^2 + y^2")
    coverage = gradient_coverage(V, Box2(-2, 2, -2, 2), depth=6, tiles=2)
    assert coverage.covered
    assert len(coverage.certified_cells) == 4
    for _, labels in coverage.cells:
        assert labels == ("exp(V)",)


def test_gradient_constant_potential():
    with pytest.raises(ConstantPotentialError):
        gradient_multipliers(Poly.constant(3))


def test_ring_radii():
    radii = ring_radii(1e-3)
    assert radii[0] == 1
    assert radii[-1] == Fraction(1, 256)
    assert all(b == a / 2 for a, b in zip(radii, radii[1:]))


def test_local_dulac_node(node):
    local = local_dulac_hyperbolic(node, (0.0, 0.0))
    assert local.multiplier.p == parse_poly("(x^2 + y^2)/4")
    assert local.box == Box2(-1, 1, -1, 1)
    assert local.hole == Box2.centered((0, 0), Fraction(1, 512))
    assert local.certificate.is_positive


def test_local_dulac_vdp(vdp):
    local = local_dulac_hyperbolic(vdp, (0.0, 0.0))
    assert local.multiplier.p == parse_poly("(3*x^2 - 4*x*y + 6*y^2)/7")
    assert local.hole == Box2.centered((0, 0), Fraction(1, 512))
    assert local.box.width >= Fraction(1, 128)
    assert local.certificate.is_positive
    assert local.certificate.box == local.box


def test_local_dulac_shifted_equilibrium():
    X = VectorField(parse_poly("x - 1"), parse_poly("2*y + x - 1"))
    local = local_dulac_hyperbolic(X, (1.0, 0.0))
    assert local.box.center == (1, 0)
    assert local.certificate.carrier == div_product(local.multiplier.p, X)


def test_local_dulac_errors(node, rotation):
    with pytest.raises(NotAnEquilibriumError):
        local_dulac_hyperbolic(node, (1.0, 1.0))
    with pytest.raises(NonHyperbolicLinearizationError):
        local_dulac_hyperbolic(rotation, (0.0, 0.0))


def test_local_dulac_fails_on_strong_nonlinearity():
    # the linear part is tiny next to the cubic terms
    X = VectorField(parse_poly("x/1000000 - 1000*y^3"), parse_poly("y/1000000 + 1000*x^3"))
    with pytest.raises(CertificationFailedError):
        local_dulac_hyperbolic(X, (0.0, 0.0), max_depth=2)


def _hyperbolic_matrix(rng):
    tenth = Fraction(1, 10)
    while True:
        A = Matrix2(*(Fraction(int(v), 10) for v in rng.integers(-20, 21, size=4)))
        if min(abs(A.trace), abs(A.det), abs(ansatz_determinant_factor(A))) >= tenth:
            return A


def _cubic_perturbation(rng):
    return sum(
        (
            Poly.monomial(i, d - i, Fraction(int(rng.integers(-10, 11)), 100))
            for d in (2, 3)
            for i in range(d + 1)
        ),
        Poly(),
    )


def _punctured_samples(box, hole, count, rng):
    x0, x1, y0, y1 = box.as_floats()
    h0, h1, k0, k1 = hole.as_floats()
    xs, ys = rng.uniform(x0, x1, 2 * count), rng.uniform(y0, y1, 2 * count)
    keep = ~((xs >= h0) & (xs <= h1) & (ys >= k0) & (ys <= k1))
    return xs[keep][:count], ys[keep][:count]


@pytest.mark.slow
def test_local_dulac_perturbed_hyperbolic_fields():
    rng = np.random.default_rng(2024)
    certified = 0
    for _ in range(50):
        X = _hyperbolic_matrix(rng).field()
        X = VectorField(X.p + _cubic_perturbation(rng), X.q + _cubic_perturbation(rng))
        try:
            local = local_dulac_hyperbolic(X, (0.0, 0.0))
        except CertificationFailedError:
            continue
        certified += 1
        assert local.box.width / 2 >= Fraction(1, 1000)
        xs, ys = _punctured_samples(local.box, local.hole, 10 ** 4, rng)
        assert len(xs) == 10 ** 4
        assert np.all(local.certificate.carrier(xs, ys) > 0)
    assert certified >= 45


def test_local_dulac_sampling_vdp(vdp):
    rng = np.random.default_rng(5)
    local = local_dulac_hyperbolic(vdp, (0.0, 0.0))
    xs, ys = _punctured_samples(local.box, local.hole, 10 ** 4, rng)
    assert np.all(local.certificate.carrier(xs, ys) > 0)


def test_flowbox_translation():
    X = VectorField(Poly.constant(1), Poly())
    sampled = flowbox_dulac(X, ((0, 0), (0, 1)), n_across=3, n_along=11, t_span=2.0)
    assert sampled.shape == (3, 11)
    expected = np.broadcast_to(1 + sampled.times, sampled.shape)
    np.testing.assert_allclose(sampled.values, expected, rtol=1e-8)
    np.testing.assert_allclose(sampled.points[1, -1], (2.0, 0.5), rtol=1e-8)
    assert sampled.min_divergence > 0
    assert sampled.tolerance < 1e-6


def test_flowbox_contracting():
    X = VectorField(Poly.constant(1), parse_poly("-y"))
    sampled = flowbox_dulac(X, ((0, -1), (0, 1)), g=parse_poly("1 + y^2"), t_span=1.0)
    assert sampled.min_divergence > 0
    assert sampled.tolerance < 1e-2


def test_flowbox_errors(node):
    with pytest.raises(EquilibriumEncounteredError):
        flowbox_dulac(node, ((0, 0), (0, 1)))
    X = VectorField(Poly.constant(1), Poly())
    with pytest.raises(TrajectoryLeftWindowError):
        flowbox_dulac(X, ((0, 0), (0, 1)), t_span=1.0, window=Box2(-1, 0.5, -1, 2))
    with pytest.raises(PositivityFailedError):
        flowbox_dulac(X, ((0, 0), (0, 1)), g=Poly.constant(-1))
    with pytest.raises(ValueError):
        flowbox_dulac(X, ((0, 0), (0, 1)), n_along=2)
