"""Constructing Dulac multiplier candidates.

* linear fields: the quadratic multiplier solving ``Div(B X) = P^2 + Q^2``;
* gradient fields ``X = grad V``: ``exp(V)``, ``exp(-V)`` and ``V``;
* hyperbolic equilibria: the quadratic multiplier of the linearization,
  certified on nested punctured boxes;
* flow boxes: ``B`` sampled along trajectories from ``dB/dt = g - B Div X``.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Tuple

import numpy as np
import sympy
from scipy.integrate import solve_ivp

from os_dulac.batch import ordered_map
from os_dulac.bernstein import (
    DEFAULT_MAX_DEPTH,
    Certificate,
    Positive,
    certify_positive,
)
from os_dulac.coeffs import parse_rational
from os_dulac.exceptions import (
    CertificationFailedError,
    ConstantPotentialError,
    DoubleZeroEigenvalueError,
    EquilibriumEncounteredError,
    FlowboxError,
    InvalidMatrixError,
    NonHyperbolicLinearizationError,
    NotAnEquilibriumError,
    PositivityFailedError,
    SingularAnsatzError,
    TraceZeroError,
    TrajectoryLeftWindowError,
)
from os_dulac.geometry import Box2, Point
from os_dulac.multiplier import ExpPolyMultiplier, PolyMultiplier
from os_dulac.poly import X_SYMBOL, Y_SYMBOL, Axis, Poly
from os_dulac.vfield import VectorField, div_product

EQUILIBRIUM_TOL = 1e-10
FLOWBOX_MIN_SPEED = 1e-8
DEFAULT_MIN_RADIUS = 1e-3
RATIONALIZE_DENOMINATOR = 10 ** 9

logger = logging.getLogger(__name__)


def _rational(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _fraction(value):
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


@dataclass(frozen=True)
class Matrix2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def parse(cls, text):
        """``"a,b;c,d"`` with rational entries, row-major."""
        try:
            rows = [r.split(",") for r in text.split(";")]
            if len(rows) != 2 or any(len(r) != 2 for r in rows):
                raise ValueError("expected 'a,b;c,d'")
            (a, b), (c, d) = [[parse_rational(v) for v in r] for r in rows]
        except ValueError as e:
            raise InvalidMatrixError(f"invalid matrix {text!r}: {e}") from e
        return cls(a, b, c, d)

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def trace(self):
        return self.a + self.d

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def transpose(self):
        return Matrix2(self.a, self.c, self.b, self.d)

    def to_sympy(self):
        return sympy.Matrix([[_rational(v) for v in r] for r in self.rows])

    def field(self):
        return VectorField.linear(self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"


@dataclass(frozen=True)
class QuadraticMultiplier:
    """``b20 (x-x0)^2 + b11 (x-x0)(y-y0) + b02 (y-y0)^2``."""

    b20: Fraction
    b11: Fraction
    b02: Fraction
    origin: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def to_poly(self):
        u = Poly.x() - self.origin[0]
        v = Poly.y() - self.origin[1]
        return u * u * self.b20 + u * v * self.b11 + v * v * self.b02

    def to_multiplier(self):
        return PolyMultiplier(self.to_poly())

    def at(self, origin):
        return QuadraticMultiplier(
            self.b20, self.b11, self.b02, (Fraction(origin[0]), Fraction(origin[1]))
        )

    @property
    def hessian(self):
        return Matrix2(2 * self.b20, self.b11, self.b11, 2 * self.b02)

    @property
    def coefficients(self):
        return (self.b20, self.b11, self.b02)


def ansatz_determinant_factor(A):
    """``3a^2 + 10ad - 4bc + 3d^2``, which equals ``3 tr(A)^2 + 4 det(A)``."""
    a, b, c, d = A.a, A.b, A.c, A.d
    return 3 * a * a + 10 * a * d - 4 * b * c + 3 * d * d


def quadratic_dulac_linear(A):
    """Quadratic ``B`` with ``Div(B A z) = |A z|^2`` as an exact identity.

    Matches the coefficients of ``x^2``, ``xy``, ``y^2`` and solves the 3x3
    system exactly.
    """
    a, b, c, d = A.a, A.b, A.c, A.d
    t = A.trace
    if t == 0 and A.det == 0:
        raise DoubleZeroEigenvalueError(f"both eigenvalues of {A} are zero")
    if t == 0:
        raise TraceZeroError(f"trace of {A} is zero")
    if ansatz_determinant_factor(A) == 0:
        raise SingularAnsatzError(f"quadratic ansatz is singular for {A}")

    system = sympy.Matrix(
        [
            [_rational(3 * a + d), _rational(c), 0],
            [_rational(2 * b), _rational(2 * t), _rational(2 * c)],
            [0, _rational(b), _rational(a + 3 * d)],
        ]
    )
    rhs = sympy.Matrix(
        [_rational(a * a + c * c), _rational(2 * a * b + 2 * c * d), _rational(b * b + d * d)]
    )
    b20, b11, b02 = (_fraction(v) for v in system.LUsolve(rhs))
    return QuadraticMultiplier(b20, b11, b02)


class B11Reading(str, Enum):
    C_MINUS_3D2 = "c-3d^2"
    C2_MINUS_3D2 = "c^2-3d^2"


def printed_coefficients(A, reading=B11Reading.C2_MINUS_3D2):
    """Closed forms ``(b20, b02, b11)`` as printed, with the ambiguous ``b11`` term read per ``reading``."""
    a, b, c, d = A.a, A.b, A.c, A.d
    den = (a + d) * ansatz_determinant_factor(A)
    if den == 0:
        raise ZeroDivisionError(f"closed forms are undefined for {A}")
    b20 = (
        a ** 4
        + 4 * a ** 3 * d
        - a ** 2 * (2 * b * c - c ** 2 - 3 * d ** 2)
        + 3 * a * c * d * (c - b)
        + c ** 2 * (b ** 2 - b * c + d ** 2)
    )
    b02 = (
        a ** 2 * (b ** 2 + 3 * d ** 2)
        + a * d * (3 * b ** 2 - 3 * b * c + 4 * d ** 2)
        - b ** 3 * c
        + b ** 2 * (c ** 2 + d ** 2)
        - 2 * b * c * d ** 2
        + d ** 4
    )
    if B11Reading(reading) is B11Reading.C_MINUS_3D2:
        ambiguous = c - 3 * d ** 2
    else:
        ambiguous = c ** 2 - 3 * d ** 2
    b11 = (
        2 * a ** 3 * b
        + a ** 2 * d * (7 * b + 3 * c)
        - a * (3 * b ** 2 * c + b * ambiguous - 7 * c * d ** 2)
        - c * d * (b ** 2 + 3 * b * c - 2 * d ** 2)
    )
    return (Fraction(b20) / den, Fraction(b02) / den, Fraction(b11) / den)


def lyapunov_residual(A, G=None):
    """``A^T G + G A + tr(A) G - 2 A^T A`` for ``G`` the Hessian of the quadratic multiplier."""
    if G is None:
        G = quadratic_dulac_linear(A).hessian
    a, g = A.to_sympy(), G.to_sympy()
    residual = a.T * g + g * a + a.trace() * g - 2 * a.T * a
    return Matrix2.from_rows([[_fraction(v) for v in residual.row(i)] for i in range(2)])


def spectrum_has_single_zero(A):
    return A.det == 0 and A.trace != 0


def has_repeated_eigenvalue(A):
    """``det A = (tr A / 2)^2``, i.e. ``sigma(A) = {tr A / 2}``."""
    return A.det == (A.trace / 2) ** 2


# gradient fields


class GradientMultiplier(NamedTuple):
    label: str
    multiplier: object
    carrier: Poly


def gradient_field(V):
    return VectorField(V.derive(Axis.X), V.derive(Axis.Y))


def gradient_multipliers(V):
    """The three multipliers of ``X = grad V`` with their exact sign-carriers."""
    V = V.require_real("potential")
    if V.is_constant:
        raise ConstantPotentialError(f"potential {V} is constant")
    X = gradient_field(V)
    out = []
    for label, B in (
        ("exp(V)", ExpPolyMultiplier(V, Poly.constant(1))),
        ("exp(-V)", ExpPolyMultiplier(-V, Poly.constant(1))),
        ("V", PolyMultiplier(V)),
    ):
        out.append(GradientMultiplier(label, B, B.sign_carrier(X)))
    return tuple(out)


@dataclass(frozen=True)
class GradientCoverage:
    region: Box2
    cells: Tuple[Tuple[Box2, Tuple[str, ...]], ...]

    @property
    def certified_cells(self):
        return [box for box, labels in self.cells if labels]

    @property
    def uncovered_cells(self):
        return [box for box, labels in self.cells if not labels]

    @property
    def covered(self):
        return all(labels for _, labels in self.cells)


def gradient_coverage(V, region, depth=DEFAULT_MAX_DEPTH, tiles=1, workers=1):
    """Which gradient carriers certify on each cell of a ``tiles x tiles`` grid.

    The union of certified cells is reported as is; nothing is claimed
    outside of it.
    """
    pairs = gradient_multipliers(V)
    cells = grid_cells(region, tiles)

    def _labels(cell):
        return tuple(
            p.label for p in pairs if certify_positive(p.carrier, cell, depth).is_positive
        )

    return GradientCoverage(region, tuple(zip(cells, ordered_map(_labels, cells, workers))))


def grid_cells(region, tiles):
    xs = [region.x_min + region.width * Fraction(i, tiles) for i in range(tiles + 1)]
    ys = [region.y_min + region.height * Fraction(j, tiles) for j in range(tiles + 1)]
    return [
        Box2(xs[i], xs[i + 1], ys[j], ys[j + 1]) for i in range(tiles) for j in range(tiles)
    ]


# hyperbolic equilibria


class LocalDulac(NamedTuple):
    multiplier: PolyMultiplier
    box: Box2
    certificate: Certificate
    hole: Box2


def rationalize(point):
    return tuple(
        Fraction(v).limit_denominator(RATIONALIZE_DENOMINATOR) for v in (point[0], point[1])
    )


def ring_radii(min_radius, start=Fraction(1)):
    """Outer half-widths ``1, 1/2, 1/4, ...`` while the hole stays at least ``min_radius``."""
    radii = [Fraction(start)]
    while radii[-1] / 4 >= min_radius:
        radii.append(radii[-1] / 2)
    return radii


def certify_ring(carrier, center, radius, depth=DEFAULT_MAX_DEPTH):
    """Certify ``carrier`` on the four rectangles of the ring of half-width ``radius``."""
    rects = Box2.centered(center, radius).ring()
    return [certify_positive(carrier, rect, depth) for rect in rects]


def merge_certificates(certificates, carrier, box):
    if any(not c.is_positive for c in certificates):
        bad = next(c for c in certificates if not c.is_positive)
        return Certificate(bad.outcome, carrier, box)
    return Certificate(
        Positive(
            max(c.outcome.max_depth_used for c in certificates),
            sum(c.outcome.box_count for c in certificates),
        ),
        carrier,
        box,
        min(c.min_coefficient for c in certificates),
    )


def local_carrier(system, eq):
    """Quadratic multiplier of the linearization at ``eq`` and its carrier, centered at ``eq``."""
    ex, ey = rationalize(eq)
    shifted = system.translate(ex, ey)
    A = Matrix2.from_rows(shifted.jacobian_exact(0, 0))
    try:
        quadratic = quadratic_dulac_linear(A)
    except (TraceZeroError, DoubleZeroEigenvalueError) as e:
        raise NonHyperbolicLinearizationError(
            f"linearization {A} at ({float(ex)}, {float(ey)}) is not admissible: {e}"
        ) from e
    return (ex, ey), quadratic, div_product(quadratic.to_poly(), shifted)


def local_dulac_hyperbolic(
    system,
    eq,
    min_radius=DEFAULT_MIN_RADIUS,
    max_depth=DEFAULT_MAX_DEPTH,
    workers=1,
    tol=EQUILIBRIUM_TOL,
):
    """Quadratic multiplier near a hyperbolic equilibrium and the largest certified box.

    Rings of half-widths ``1, 1/2, ...`` are certified; the box is the largest
    one whose rings are all positive down to the innermost ring.  The returned
    certificate covers the punctured box ``box \\ hole``.
    """
    eq = Point(float(eq[0]), float(eq[1]))
    residual = float(system.speed(eq.x, eq.y))
    if not residual <= tol:
        raise NotAnEquilibriumError(eq, residual)

    center, quadratic, carrier = local_carrier(system, eq)
    radii = ring_radii(min_radius)
    zero = (Fraction(0), Fraction(0))
    rings = ordered_map(lambda r: certify_ring(carrier, zero, r, max_depth), radii, workers)

    accepted = 0
    for rects in reversed(rings):
        if not all(c.is_positive for c in rects):
            break
        accepted += 1
    if accepted == 0:
        undecided = [c for c in rings[-1] if not c.is_positive]
        logger.debug(f"Innermost ring at {eq} fails: {undecided[0].outcome}")
        raise CertificationFailedError(
            f"carrier {carrier} is not positive near {eq} down to radius {min_radius}",
            radius=min_radius,
        )

    kept = rings[len(rings) - accepted :]
    radius = radii[len(radii) - accepted]
    box = Box2.centered(center, radius)
    hole = Box2.centered(center, radii[-1] / 2)
    original = carrier.translate(-center[0], -center[1])
    certificate = merge_certificates(
        [c for rects in kept for c in rects], original, box
    )
    logger.debug(f"Local Dulac at {eq}: half-width {radius}, {len(kept)} rings")
    return LocalDulac(quadratic.at(center).to_multiplier(), box, certificate, hole)


# flow boxes


@dataclass(frozen=True)
class SampledMultiplier:
    """``B`` sampled on ``n_across x n_along`` trajectory nodes.

    ``divergence`` holds ``Div(B X) = g`` at the nodes; ``fd_divergence`` is the
    central finite difference ``dB/dt + B Div X`` at interior nodes and
    ``tolerance`` their largest disagreement.
    """

    transversal: Tuple[Point, Point]
    times: np.ndarray = field(repr=False)
    points: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    divergence: np.ndarray = field(repr=False)
    fd_divergence: np.ndarray = field(repr=False)
    tolerance: float = 0.0

    @property
    def shape(self):
        return self.values.shape

    @property
    def min_divergence(self):
        return float(np.min(self.fd_divergence))


def _augmented_rhs(system, g):
    b = sympy.Symbol("b")
    exprs = [
        system.p.to_sympy(),
        system.q.to_sympy(),
        g.to_sympy() - b * system.divergence.to_sympy(),
    ]
    fn = sympy.lambdify((X_SYMBOL, Y_SYMBOL, b), exprs, modules="numpy")

    def rhs(t, z):
        return np.asarray(fn(z[0], z[1], z[2]), dtype=float)

    return rhs


def _window_event(window):
    x0, x1, y0, y1 = window.as_floats()

    def event(t, z):
        return min(z[0] - x0, x1 - z[0], z[1] - y0, y1 - z[1])

    event.terminal = True
    event.direction = -1
    return event


def flowbox_dulac(
    system,
    transversal,
    g=None,
    n_across=5,
    n_along=21,
    t_span=1.0,
    window=None,
    tol=1e-10,
):
    """Sample ``B`` with ``Div(B X) = g`` on the flow box swept from ``transversal``.

    ``B = 1`` on the transversal.  Div X must stay bounded along the sampled
    trajectories; this is the integrability assumption the construction needs.
    """
    g = Poly.constant(1) if g is None else g.require_real("g")
    if n_across < 1 or n_along < 3:
        raise ValueError("need n_across >= 1 and n_along >= 3")
    start, end = (np.asarray(p, dtype=float) for p in transversal)
    seeds = [start + s * (end - start) for s in np.linspace(0.0, 1.0, n_across)]
    times = np.linspace(0.0, float(t_span), n_along)
    rhs = _augmented_rhs(system, g)
    events = [_window_event(window)] if window is not None else None

    points = np.empty((n_across, n_along, 2))
    values = np.empty((n_across, n_along))
    for i, seed in enumerate(seeds):
        if system.speed(seed[0], seed[1]) < FLOWBOX_MIN_SPEED:
            raise EquilibriumEncounteredError(f"equilibrium at seed {tuple(seed)}")
        sol = solve_ivp(
            rhs,
            (0.0, float(t_span)),
            [seed[0], seed[1], 1.0],
            method="RK45",
            t_eval=times,
            rtol=tol,
            atol=tol,
            events=events,
        )
        if sol.status == 1 or sol.y.shape[1] != n_along:
            raise TrajectoryLeftWindowError(
                f"trajectory from {tuple(seed)} leaves the window before t = {t_span}"
            )
        if sol.status != 0:
            raise FlowboxError(f"integration from {tuple(seed)} failed: {sol.message}")
        points[i] = sol.y[:2].T
        values[i] = sol.y[2]

    xs, ys = points[..., 0], points[..., 1]
    speed = system.speed(xs, ys)
    if np.any(speed < FLOWBOX_MIN_SPEED):
        i, j = np.argwhere(speed < FLOWBOX_MIN_SPEED)[0]
        raise EquilibriumEncounteredError(
            f"equilibrium encountered near node {(int(i), int(j))}"
        )
    div = np.broadcast_to(system.divergence(xs, ys), xs.shape)
    if not np.all(np.isfinite(div)) or not np.all(np.isfinite(values)):
        raise FlowboxError("Div X is unbounded along the sampled trajectories")

    exact = np.broadcast_to(np.real(g(xs, ys)), xs.shape).astype(float)
    if np.any(exact <= 0):
        i, j = np.argwhere(exact <= 0)[0]
        raise PositivityFailedError((int(i), int(j)), float(exact[i, j]))

    dt = times[1] - times[0]
    fd = (values[:, 2:] - values[:, :-2]) / (2 * dt) + values[:, 1:-1] * div[:, 1:-1]
    if np.any(fd <= 0):
        i, j = np.argwhere(fd <= 0)[0]
        raise PositivityFailedError((int(i), int(j) + 1), float(fd[i, j]))

    tolerance = float(np.max(np.abs(fd - exact[:, 1:-1])))
    logger.debug(f"Flow box {n_across}x{n_along}: fd tolerance {tolerance:.3e}")
    return SampledMultiplier(
        (Point(*start), Point(*end)), times, points, values, exact, fd, tolerance
    )
