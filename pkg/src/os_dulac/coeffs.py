"""Exact coefficient field.

``Rat`` is :class:`fractions.Fraction` (always reduced, positive denominator).
``CRat`` is a Gaussian rational used only where an invariant function is
genuinely complex; arithmetic collapses back to ``Fraction`` whenever the
imaginary part vanishes, so real polynomials never pay for complex support.
"""
from fractions import Fraction
from numbers import Rational

Rat = Fraction


class CRat(object):
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    def conjugate(self):
        return CRat(self.re, -self.im)

    @property
    def is_real(self):
        return self.im == 0

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return coerce(CRat(self.re + other.re, self.im + other.im))

    __radd__ = __add__

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return coerce(CRat(self.re - other.re, self.im - other.im))

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return coerce(
            CRat(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return coerce(
            CRat(
                (self.re * other.re + self.im * other.im) / norm,
                (self.im * other.re - self.re * other.im) / norm,
            )
        )

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CRat({self.re}, {self.im})"

    def __str__(self):
        if self.re == 0:
            return f"{self.im}*I"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}*I"


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"exact rational expected, got {value!r}")


def _lift(value):
    if isinstance(value, CRat):
        return value
    if isinstance(value, (int, Rational)):
        return CRat(value, 0)
    return None


def coerce(value):
    """Normalize a coefficient: ``Fraction`` when real, ``CRat`` otherwise."""
    if isinstance(value, CRat):
        return value.re if value.im == 0 else value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    return _as_fraction(value)


def is_real(value):
    return not isinstance(value, CRat)


def conjugate(value):
    return value.conjugate() if isinstance(value, CRat) else value


def parse_rational(text):
    """``"1/2"``, ``"0.25"``, ``"-3"`` or ``"1e-3"`` as an exact ``Fraction``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {text!r}") from e


def format_rational(value):
    return str(value) if value.denominator != 1 else str(value.numerator)


def format_coefficient(value):
    value = coerce(value)
    return format_rational(value) if is_real(value) else str(value)
