"""Exact bivariate polynomials in ``x`` and ``y``.

Terms are kept in a map ``(i, j) -> coefficient`` with no stored zeros.  The
canonical order is graded lexicographic with ``x > y``; it fixes both the
printed form and the remainders of :func:`poly_divide`.
"""
from enum import Enum
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType

import numpy as np
import sympy
from numpy.polynomial import polynomial as npoly

from os_dulac.coeffs import CRat, coerce, conjugate, format_rational, is_real
from os_dulac.exceptions import ComplexCoefficientError, ZeroPolynomialError

X_SYMBOL, Y_SYMBOL = sympy.symbols("x y", real=True)


class Axis(str, Enum):
    X = "x"
    Y = "y"


def grlex_key(monomial):
    i, j = monomial
    return (i + j, i)


class Poly(object):
    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            c = coerce(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def x(cls):
        return cls.monomial(1, 0)

    @classmethod
    def y(cls):
        return cls.monomial(0, 1)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def coefficient(self, i, j):
        return self._terms.get((i, j), Fraction(0))

    @property
    def constant_term(self):
        return self.coefficient(0, 0)

    @cached_property
    def degree(self):
        return max((i + j for i, j in self._terms), default=-1)

    @cached_property
    def degree_x(self):
        return max((i for i, _ in self._terms), default=-1)

    @cached_property
    def degree_y(self):
        return max((j for _, j in self._terms), default=-1)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_constant(self):
        return self.degree <= 0

    @cached_property
    def is_real(self):
        return all(is_real(c) for c in self._terms.values())

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    # arithmetic

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        res = dict(self._terms)
        for m, c in other._terms.items():
            v = res.get(m, 0) + c
            if v == 0:
                res.pop(m, None)
            else:
                res[m] = v
        return Poly._wrap(res)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            res = {}
            for (i1, j1), c1 in self._terms.items():
                for (i2, j2), c2 in other._terms.items():
                    m = (i1 + i2, j1 + j2)
                    res[m] = res.get(m, 0) + c1 * c2
            return Poly._wrap({m: coerce(c) for m, c in res.items() if c != 0})
        try:
            s = coerce(other)
        except TypeError:
            return NotImplemented
        if s == 0:
            return Poly()
        return Poly._wrap({m: coerce(c * s) for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant:
                return NotImplemented
            other = other.constant_term
        s = coerce(other)
        if s == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return Poly._wrap({m: coerce(c / s) for m, c in self._terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n!r}")
        result, base = Poly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # calculus and substitutions

    def derive(self, axis):
        axis = Axis(axis)
        res = {}
        for (i, j), c in self._terms.items():
            if axis is Axis.X and i > 0:
                res[(i - 1, j)] = coerce(c * i)
            elif axis is Axis.Y and j > 0:
                res[(i, j - 1)] = coerce(c * j)
        return Poly._wrap(res)

    def conjugate(self):
        return Poly._wrap({m: conjugate(c) for m, c in self._terms.items()})

    def substitute(self, x=None, y=None):
        """Compose with polynomials ``x -> x``, ``y -> y`` (exact)."""
        x = Poly.x() if x is None else _as_poly(x)
        y = Poly.y() if y is None else _as_poly(y)
        xp, yp = _powers(x, self.degree_x), _powers(y, self.degree_y)
        result = Poly()
        for (i, j), c in self._terms.items():
            result = result + (xp[i] * yp[j]) * c
        return result

    def translate(self, x0, y0):
        return self.substitute(Poly.x() + x0, Poly.y() + y0)

    def affine(self, x0, wx, y0, wy):
        """``p(x0 + wx*u, y0 + wy*v)`` written in ``(u, v)`` as ``(x, y)``."""
        return self.substitute(Poly.x() * wx + x0, Poly.y() * wy + y0)

    # evaluation

    @cached_property
    def coefficient_array(self):
        dtype = float if self.is_real else complex
        arr = np.zeros((max(self.degree_x, 0) + 1, max(self.degree_y, 0) + 1), dtype)
        for (i, j), c in self._terms.items():
            arr[i, j] = complex(c) if isinstance(c, CRat) else float(c)
        arr.flags.writeable = False
        return arr

    def __call__(self, x, y):
        """Vectorized floating-point evaluation (Horner in each variable)."""
        return npoly.polyval2d(x, y, self.coefficient_array)

    def evaluate_exact(self, x, y):
        x, y = Fraction(x), Fraction(y)
        xp = [Fraction(1)]
        for _ in range(self.degree_x):
            xp.append(xp[-1] * x)
        yp = [Fraction(1)]
        for _ in range(self.degree_y):
            yp.append(yp[-1] * y)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total = total + c * (xp[i] * yp[j])
        return coerce(total)

    def require_real(self, what="polynomial"):
        if not self.is_real:
            raise ComplexCoefficientError(f"{what} {self} has complex coefficients")
        return self

    # conversions

    def to_sympy(self, x=X_SYMBOL, y=Y_SYMBOL):
        return sympy.Add(
            *[sympy_number(c) * x ** i * y ** j for (i, j), c in self._terms.items()]
        )

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for k, ((i, j), c) in enumerate(self.sorted_terms()):
            mono = _monomial_str(i, j)
            if isinstance(c, CRat):
                negative, body = False, f"({c})" if not mono else f"({c})*{mono}"
            else:
                negative, mag = c < 0, abs(c)
                if not mono:
                    body = format_rational(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{format_rational(mag)}*{mono}"
            if k == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    try:
        return Poly.constant(coerce(value))
    except TypeError:
        return None


def _powers(p, n):
    out = [Poly.constant(1)]
    for _ in range(max(n, 0)):
        out.append(out[-1] * p)
    return out


def _monomial_str(i, j):
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def sympy_number(c):
    if isinstance(c, CRat):
        return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator
        )
    return sympy.Rational(c.numerator, c.denominator)


def derive(p, axis):
    return p.derive(axis)


def poly_divide(n, d):
    """Multivariate division of ``n`` by ``d`` under grlex order.

    Returns ``(quotient, remainder)`` with ``n = quotient * d + remainder`` and no
    remainder term divisible by the leading monomial of ``d``.  With a single
    divisor the remainder is zero exactly when ``d`` divides ``n``.
    """
    if d.is_zero:
        raise ZeroPolynomialError("division by the zero polynomial")
    (li, lj), lc = d.leading_term()
    rest = dict(n._terms)
    quotient, remainder = {}, {}
    while rest:
        m = max(rest, key=grlex_key)
        c = rest[m]
        if m[0] >= li and m[1] >= lj:
            ti, tj = m[0] - li, m[1] - lj
            tc = coerce(c / lc)
            quotient[(ti, tj)] = coerce(quotient.get((ti, tj), 0) + tc)
            for (i, j), dc in d._terms.items():
                key = (i + ti, j + tj)
                v = coerce(rest.get(key, 0) - tc * dc)
                if v == 0:
                    rest.pop(key, None)
                else:
                    rest[key] = v
        else:
            remainder[m] = c
            del rest[m]
    return Poly(quotient), Poly._wrap(remainder)


def evaluate(p, z):
    return complex(p(float(z[0]), float(z[1])))
