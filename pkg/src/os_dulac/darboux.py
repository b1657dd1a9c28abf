"""Invariant curves, exponential factors and Darboux first integrals.

For invariant curves ``f_i`` (cofactors ``k_i``) and exponential factors
``exp(g_j/h_j)`` (cofactors ``l_j``) the function

    H = prod f_i^lambda_i * prod exp(g_j/h_j)^mu_j

satisfies ``<grad H, X> = (sum lambda_i k_i + sum mu_j l_j) H``, so ``H`` is a
first integral whenever the exponents lie in the kernel of the cofactor map.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import NamedTuple, Tuple

import numpy as np
import sympy

from os_dulac.batch import ordered_map
from os_dulac.coeffs import CRat, coerce, format_rational
from os_dulac.equilibria import newton_zeros
from os_dulac.exceptions import (
    ConstantInputError,
    DegreeBoundViolatedError,
    NoNontrivialRelationError,
    NotExponentialFactorError,
    NotInvariantError,
    ZeroPolynomialError,
)
from os_dulac.flow import integrate
from os_dulac.geometry import Box2
from os_dulac.multiplier import sign_carrier
from os_dulac.poly import Axis, Poly, grlex_key, poly_divide, sympy_number
from os_dulac.vfield import div_product, lie_derivative

SINGULAR_SEARCH_BOX = Box2(-10, 10, -10, 10)
ZERO_SET_CLEARANCE = 1e-3
MAX_RESAMPLES = 1000
# decaying coordinates are resolved well below rtol
DRIFT_ATOL_FACTOR = 1e-6

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantCurve:
    f: Poly
    k: Poly
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __str__(self):
        return f"{self.f}  [cofactor {self.k}]"


@dataclass(frozen=True)
class ExponentialFactor:
    g: Poly
    h: Poly
    k: Poly

    def __str__(self):
        if self.h == 1:
            return f"exp({self.g})"
        return f"exp(({self.g})/({self.h}))"


@dataclass(frozen=True)
class ResidualReport:
    symbolic_residual: Poly
    numeric_max_drift: float = 0.0
    trajectories_checked: int = 0

    @property
    def is_zero(self):
        return self.symbolic_residual.is_zero

    @property
    def drift_bounded(self):
        return math.isfinite(self.numeric_max_drift)


def _singular_points(f, X, region):
    """Common zeros of ``f`` and ``grad f`` in ``region`` where ``X`` does not vanish."""
    if not f.is_real or f.degree < 2:
        return []
    fx, fy = f.derive(Axis.X), f.derive(Axis.Y)
    bad = []
    for z in newton_zeros(fx, fy, region, grid_n=16, tol=1e-10):
        if abs(f(z.x, z.y)) <= 1e-8 and X.speed(z.x, z.y) > 1e-8:
            bad.append(z)
    return bad


def cofactor_of(f, X, region=SINGULAR_SEARCH_BOX):
    """The unique ``k`` with ``<grad f, X> = k f``, by exact division."""
    if f.is_constant:
        raise ConstantInputError(f"curve {f} is constant")
    k, remainder = poly_divide(lie_derivative(f, X), f)
    if not remainder.is_zero:
        raise NotInvariantError(remainder)
    warnings = []
    for z in _singular_points(f, X, region):
        message = (
            f"f and grad f vanish at ({z.x:.6g}, {z.y:.6g}) where X does not; "
            f"the curve degenerates there"
        )
        logger.warning(message)
        warnings.append(message)
    return InvariantCurve(f, k, tuple(warnings))


def conjugate_curve(curve):
    return InvariantCurve(curve.f.conjugate(), curve.k.conjugate(), curve.warnings)


def product_curve(first, second):
    return InvariantCurve(first.f * second.f, first.k + second.k)


def exponential_factor_cofactor(g, h, X):
    """Cofactor of ``exp(g/h)``; ``g`` and ``h`` are assumed coprime."""
    if h.is_zero:
        raise ZeroPolynomialError("denominator h of exp(g/h) is zero")
    numerator = h * lie_derivative(g, X) - g * lie_derivative(h, X)
    k, remainder = poly_divide(numerator, h * h)
    if not remainder.is_zero:
        raise NotExponentialFactorError(remainder)
    bound = X.degree - 1
    if k.degree > bound:
        raise DegreeBoundViolatedError(k, bound)
    return ExponentialFactor(g, h, k)


def check_integrating_factor(mu, X):
    """Residual is the exact carrier of ``Div(mu X)``; zero means ``mu`` integrates ``X``."""
    return ResidualReport(sign_carrier(mu, X))


def check_inverse_integrating_factor(V, X):
    """Residual ``<grad V, X> - V Div X``; zero means ``1/V`` integrates ``X`` off ``{V = 0}``."""
    if V.is_zero:
        raise ZeroPolynomialError("inverse integrating factor must be nonzero")
    return ResidualReport(lie_derivative(V, X) - V * X.divergence)


class CurveCountHint(NamedTuple):
    degree: int
    supplied: int
    needed: int

    @property
    def enough(self):
        return self.supplied >= self.needed

    def __str__(self):
        state = "enough" if self.enough else "fewer than"
        return (
            f"{self.supplied} invariant curves supplied, {state} "
            f"d(d+1)/2 + 1 = {self.needed} for degree {self.degree}"
        )


def curve_count_hint(d, n):
    return CurveCountHint(d, n, d * (d + 1) // 2 + 1)


def _exponent_str(value):
    if value == 1:
        return ""
    if isinstance(value, CRat):
        return f"^({value})"
    if value.denominator == 1 and value > 0:
        return f"^{value.numerator}"
    return f"^({format_rational(value)})"


def _factor_str(f):
    text = str(f)
    return text if text in ("x", "y") else f"({text})"


@dataclass(frozen=True)
class DarbouxExpr:
    curve_factors: Tuple[Tuple[InvariantCurve, object], ...]
    exp_factors: Tuple[Tuple[ExponentialFactor, object], ...] = ()

    @property
    def total_cofactor(self):
        total = Poly()
        for curve, lam in self.curve_factors:
            total = total + curve.k * lam
        for factor, mu in self.exp_factors:
            total = total + factor.k * mu
        return total

    @property
    def is_first_integral(self):
        return self.total_cofactor.is_zero

    @property
    def exponents(self):
        return tuple(e for _, e in self.curve_factors) + tuple(
            e for _, e in self.exp_factors
        )

    def log_value(self, x, y):
        """Complex logarithm of ``H`` with the principal branch on each factor."""
        total = 0j
        for curve, lam in self.curve_factors:
            total = total + complex(lam) * np.log(curve.f(x, y) + 0j)
        for factor, mu in self.exp_factors:
            total = total + complex(mu) * (factor.g(x, y) / factor.h(x, y))
        return total

    def log_along(self, states):
        """``log H`` along a sampled path with the factor arguments unwrapped."""
        xs, ys = states[:, 0], states[:, 1]
        total = np.zeros(len(xs), dtype=complex)
        for curve, lam in self.curve_factors:
            values = curve.f(xs, ys) + 0j
            logs = np.log(np.abs(values)) + 1j * np.unwrap(np.angle(values))
            total = total + complex(lam) * logs
        for factor, mu in self.exp_factors:
            total = total + complex(mu) * (factor.g(xs, ys) / factor.h(xs, ys))
        return total

    def __str__(self):
        parts = [
            f"{_factor_str(c.f)}{_exponent_str(lam)}"
            for c, lam in self.curve_factors
            if lam != 0
        ]
        parts += [f"{e}{_exponent_str(mu)}" for e, mu in self.exp_factors if mu != 0]
        return " * ".join(parts) if parts else "1"


def _cofactor_matrix(cofactors, complex_entries):
    monomials = sorted({m for k in cofactors for m in k.terms}, key=grlex_key, reverse=True)
    if complex_entries:
        rows = [[sympy_number(k.coefficient(*m)) for k in cofactors] for m in monomials]
    else:
        rows = []
        for m in monomials:
            coeffs = [k.coefficient(*m) for k in cofactors]
            rows.append([sympy_number(_re(c)) for c in coeffs])
            rows.append([sympy_number(_im(c)) for c in coeffs])
    if not rows:
        rows = [[0] * len(cofactors)]
    return sympy.Matrix(rows)


def _re(c):
    return c.re if isinstance(c, CRat) else c


def _im(c):
    return c.im if isinstance(c, CRat) else Fraction(0)


def _to_coeff(value):
    re, im = (sympy.Rational(v) for v in sympy.expand(value).as_real_imag())
    return coerce(CRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))


def _primitive(vector):
    """Smallest integer (or Gaussian integer) multiple, first nonzero entry positive."""
    parts = [p for v in vector for p in (_re(v), _im(v))]
    denominators = reduce(lambda a, b: a * b // math.gcd(a, b), (p.denominator for p in parts), 1)
    numerators = [int(p * denominators) for p in parts]
    g = reduce(math.gcd, numerators, 0) or 1
    scaled = [coerce(v * Fraction(denominators, g)) for v in vector]
    lead = next(v for v in scaled if v != 0)
    if _re(lead) < 0 or (_re(lead) == 0 and _im(lead) < 0):
        scaled = [-v for v in scaled]
    return tuple(scaled)


def _size(vector):
    return sum(abs(_re(v)) + abs(_im(v)) for v in vector)


def _order_key(vector):
    return (_size(vector), tuple((_re(v), _im(v)) for v in vector))


def _best_kernel_vector(basis):
    candidates = [tuple(b) for b in basis]
    for u, v in combinations(basis, 2):
        candidates.append(tuple(a + b for a, b in zip(u, v)))
        candidates.append(tuple(a - b for a, b in zip(u, v)))
    candidates = [_primitive(c) for c in candidates if any(x != 0 for x in c)]
    return min(candidates, key=_order_key)


def darboux_first_integral(curves, expf=()):
    """Exponents making the total cofactor vanish, preferring a real integer vector."""
    curves, expf = tuple(curves), tuple(expf)
    if not curves and not expf:
        raise NoNontrivialRelationError("no invariant curves or exponential factors given")
    cofactors = [c.k for c in curves] + [e.k for e in expf]

    basis = _cofactor_matrix(cofactors, complex_entries=False).nullspace()
    if not basis and not all(k.is_real for k in cofactors):
        basis = _cofactor_matrix(cofactors, complex_entries=True).nullspace()
        logger.debug("Real kernel is trivial, using complex exponents")
    if not basis:
        raise NoNontrivialRelationError(
            f"cofactors {', '.join(str(k) for k in cofactors)} are linearly independent"
        )
    vectors = [[_to_coeff(v) for v in b] for b in basis]
    best = _best_kernel_vector(vectors)
    n = len(curves)
    expr = DarbouxExpr(
        tuple(zip(curves, best[:n])), tuple(zip(expf, best[n:]))
    )
    assert expr.is_first_integral
    logger.debug(f"Darboux integral {expr} from kernel of dimension {len(basis)}")
    return expr


def _sample_seeds(H, box, count, rng, clearance=ZERO_SET_CLEARANCE):
    x0, x1, y0, y1 = box.as_floats()
    seeds = []
    for _ in range(count * MAX_RESAMPLES):
        if len(seeds) == count:
            break
        x, y = rng.uniform(x0, x1), rng.uniform(y0, y1)
        if all(abs(c.f(x, y)) >= clearance for c, _ in H.curve_factors) and all(
            abs(e.h(x, y)) >= clearance for e, _ in H.exp_factors
        ):
            seeds.append((x, y))
    return seeds


def verify_first_integral(
    H,
    X,
    trajectories=8,
    t_span=10.0,
    tol=1e-10,
    seed=0,
    box=Box2(-2, 2, -2, 2),
    workers=1,
):
    """Symbolic residual plus the largest relative drift ``|H(t)/H(0) - 1|`` on random trajectories."""
    rng = np.random.default_rng(seed)
    seeds = _sample_seeds(H, box, trajectories, rng)

    def _drift(z0):
        traj = integrate(X, z0, t_span, tol, atol=tol * DRIFT_ATOL_FACTOR)
        logs = H.log_along(traj.states)
        with np.errstate(over="ignore", invalid="ignore"):
            drift = np.abs(np.expm1(logs - logs[0]))
        return float(np.nanmax(drift)) if np.any(np.isfinite(drift)) else math.inf

    drifts = ordered_map(_drift, seeds, workers)
    return ResidualReport(
        H.total_cofactor, max(drifts, default=0.0), len(seeds)
    )


def pointwise_dulac_cofactor(B, X, z):
    """``-Div X(z) + g(z)/B(z)`` with ``g = Div(B X)``."""
    x, y = float(z[0]), float(z[1])
    g = div_product(B, X)
    return float(np.real(-X.divergence(x, y) + g(x, y) / B(x, y)))


def dulac_cofactor_crosscheck(B, X, samples=100, seed=0, box=Box2(-2, 2, -2, 2)):
    """Exact residual of ``<grad B, X> = g - B Div X`` and the worst pointwise defect of ``k B``."""
    if B.is_zero:
        raise ZeroPolynomialError("Dulac function must be nonzero")
    g = div_product(B, X)
    lie = lie_derivative(B, X)
    residual = lie - (g - B * X.divergence)

    rng = np.random.default_rng(seed)
    x0, x1, y0, y1 = box.as_floats()
    worst, checked = 0.0, 0
    for _ in range(samples * MAX_RESAMPLES):
        if checked == samples:
            break
        x, y = rng.uniform(x0, x1), rng.uniform(y0, y1)
        if abs(B(x, y)) < ZERO_SET_CLEARANCE:
            continue
        k = pointwise_dulac_cofactor(B, X, (x, y))
        lhs = float(np.real(lie(x, y)))
        defect = abs(lhs - k * float(np.real(B(x, y)))) / max(1.0, abs(lhs))
        worst = max(worst, defect)
        checked += 1
    return ResidualReport(residual, worst, checked)

