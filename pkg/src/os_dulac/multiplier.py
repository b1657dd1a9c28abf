"""Structured Dulac multipliers.

A multiplier is either a polynomial ``p`` or ``exp(g) * p``.  In both cases
``Div(B X) = exp(g) * carrier`` with a polynomial sign-carrier, so positivity
of ``Div(B X)`` reduces to positivity of a polynomial.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np

from os_dulac.poly import Poly
from os_dulac.vfield import div_product, lie_derivative


@dataclass(frozen=True)
class PolyMultiplier:
    p: Poly

    @property
    def g(self):
        return Poly()

    def sign_carrier(self, X):
        return div_product(self.p, X)

    def __call__(self, x, y):
        return np.real(self.p(x, y))

    def to_poly(self):
        return self.p

    def __str__(self):
        return str(self.p)


@dataclass(frozen=True)
class ExpPolyMultiplier:
    g: Poly
    p: Poly

    def sign_carrier(self, X):
        return div_product(self.p, X) + self.p * lie_derivative(self.g, X)

    def __call__(self, x, y):
        return np.real(np.exp(self.g(x, y)) * self.p(x, y))

    def to_poly(self):
        if self.g.is_zero:
            return self.p
        raise ValueError(f"{self} is not a polynomial multiplier")

    def __str__(self):
        if self.p == 1:
            return f"exp({self.g})"
        return f"exp({self.g})*({self.p})"


Multiplier = Union[PolyMultiplier, ExpPolyMultiplier]


def as_multiplier(value):
    if isinstance(value, (PolyMultiplier, ExpPolyMultiplier)):
        return value
    if isinstance(value, Poly):
        return PolyMultiplier(value)
    return PolyMultiplier(Poly.constant(value))


def sign_carrier(B, X):
    """Polynomial ``c`` with ``Div(B X) = exp(g) * c`` pointwise."""
    return as_multiplier(B).sign_carrier(X)
