from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping

import numpy as np
import sympy

from os_dulac.poly import X_SYMBOL, Y_SYMBOL, Axis, Poly


@dataclass(frozen=True)
class VectorField:
    """Planar polynomial field ``X = (P, Q)``; parameters are already substituted."""

    p: Poly
    q: Poly
    params: Mapping[str, Fraction] = field(default_factory=dict, hash=False)
    source_text: str = field(default="", compare=False, hash=False, repr=False)

    def __post_init__(self):
        self.p.require_real("P")
        self.q.require_real("Q")
        object.__setattr__(
            self, "params", {k: Fraction(v) for k, v in dict(self.params).items()}
        )

    @classmethod
    def linear(cls, a, b, c, d):
        x, y = Poly.x(), Poly.y()
        return cls(x * a + y * b, x * c + y * d)

    @property
    def degree(self):
        return max(self.p.degree, self.q.degree)

    @cached_property
    def divergence(self):
        return self.p.derive(Axis.X) + self.q.derive(Axis.Y)

    @cached_property
    def jacobian(self):
        return (
            (self.p.derive(Axis.X), self.p.derive(Axis.Y)),
            (self.q.derive(Axis.X), self.q.derive(Axis.Y)),
        )

    @cached_property
    def norm_squared(self):
        return self.p * self.p + self.q * self.q

    def __call__(self, x, y):
        return self.p(x, y), self.q(x, y)

    def speed(self, x, y):
        px, qy = self(x, y)
        return np.hypot(px, qy)

    def jacobian_at(self, x, y):
        return np.array([[float(d(x, y)) for d in row] for row in self.jacobian])

    def jacobian_exact(self, x, y):
        return tuple(tuple(d.evaluate_exact(x, y) for d in row) for row in self.jacobian)

    def translate(self, x0, y0):
        """The field seen from ``(x0, y0)``: ``(u, v) -> X(x0 + u, y0 + v)``."""
        return VectorField(self.p.translate(x0, y0), self.q.translate(x0, y0))

    def scaled(self, factor):
        return VectorField(self.p * factor, self.q * factor, self.params)

    @cached_property
    def rhs(self):
        fn = sympy.lambdify(
            (X_SYMBOL, Y_SYMBOL), [self.p.to_sympy(), self.q.to_sympy()], modules="math"
        )

        def rhs(t, z):
            return fn(z[0], z[1])

        return rhs

    def __str__(self):
        return f"(P, Q) = ({self.p}, {self.q})"


def divergence(X):
    return X.divergence


def lie_derivative(f, X):
    return X.p * f.derive(Axis.X) + X.q * f.derive(Axis.Y)


def div_product(B, X):
    """``Div(B X) = B Div X + <grad B, X>`` (Leibniz rule), exactly."""
    return B * X.divergence + lie_derivative(B, X)
