"""Text front end: polynomial expressions, multipliers and ``.vf`` systems.

Expressions are parsed by precedence climbing over a token stream.  Values
are exact :class:`~os_dulac.poly.Poly` objects (or an ``exp(g) * p`` pair when
multipliers are allowed), so the parse result is already fully expanded.

``.vf`` grammar (UTF-8, line oriented, ``#`` starts a comment)::

    line := "P = " expr | "Q = " expr | "param " ident " = " number
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from os_dulac.coeffs import CRat, format_rational
from os_dulac.exceptions import (
    NonPolynomialError,
    ParseError,
    UndefinedParameterError,
    UnknownIdentifierError,
)
from os_dulac.multiplier import ExpPolyMultiplier, PolyMultiplier
from os_dulac.poly import Poly
from os_dulac.vfield import VectorField

IMAGINARY_UNIT = "I"
RESERVED = {"x", "y", IMAGINARY_UNIT, "exp", "P", "Q", "param"}

# (precedence, associativity); higher binds tighter
BINARY = {
    "+": (1, "left"),
    "-": (1, "left"),
    "*": (2, "left"),
    "/": (2, "left"),
    "^": (4, "right"),
}
UNARY_PREC = 3

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text, line=1, column=1):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column + pos)
        kind = m.lastgroup
        if kind != "ws":
            value = "^" if m.group() == "**" else m.group()
            tokens.append(Token(kind, value, line, column + pos))
        pos = m.end()
    tokens.append(Token("eof", "", line, column + len(text)))
    return tokens


@dataclass(frozen=True)
class _Exp:
    """Intermediate value ``exp(g) * p``."""

    g: Poly
    p: Poly


class _ExpressionParser(object):
    def __init__(self, tokens, params=None, allow_exp=False, declared=()):
        self.tokens = tokens
        self.pos = 0
        self.params = params
        self.declared = frozenset(declared)
        self.allow_exp = allow_exp

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text or tok.kind == "eof":
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.line, tok.column)
        return tok

    def parse(self):
        value = self.expression(0)
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.column)
        return value

    def expression(self, min_prec):
        lhs = self.unary()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in BINARY:
                break
            prec, assoc = BINARY[tok.text]
            if prec < min_prec:
                break
            self.next()
            rhs = self.expression(prec + 1 if assoc == "left" else prec)
            lhs = self.apply(tok, lhs, rhs)
        return lhs

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.next()
            operand = self.expression(UNARY_PREC)
            if tok.text == "+":
                return operand
            if isinstance(operand, _Exp):
                return _Exp(operand.g, -operand.p)
            return -operand
        return self.atom()

    def atom(self):
        tok = self.next()
        if tok.kind == "num":
            return Poly.constant(Fraction(tok.text))
        if tok.kind == "op" and tok.text == "(":
            value = self.expression(0)
            self.expect(")")
            return value
        if tok.kind == "ident":
            if self.peek().text == "(":
                return self.call(tok)
            return self.identifier(tok)
        found = tok.text or "end of input"
        raise ParseError(f"unexpected {found!r}", tok.line, tok.column)

    def call(self, tok):
        if tok.text != "exp":
            raise UnknownIdentifierError(
                f"unknown function {tok.text!r}", tok.line, tok.column
            )
        if not self.allow_exp:
            raise NonPolynomialError(
                "exp(...) is not allowed in a polynomial", tok.line, tok.column
            )
        self.expect("(")
        inner = self.expression(0)
        self.expect(")")
        if isinstance(inner, _Exp):
            raise NonPolynomialError("nested exp(...)", tok.line, tok.column)
        return _Exp(inner, Poly.constant(1))

    def identifier(self, tok):
        name = tok.text
        if name == "x":
            return Poly.x()
        if name == "y":
            return Poly.y()
        if name == IMAGINARY_UNIT:
            return Poly.constant(CRat(0, 1))
        if self.params is not None and name in self.params:
            return Poly.constant(self.params[name])
        if name in self.declared:
            raise UndefinedParameterError(
                f"parameter {name!r} used before its definition", tok.line, tok.column
            )
        raise UnknownIdentifierError(f"unknown identifier {name!r}", tok.line, tok.column)

    def apply(self, tok, lhs, rhs):
        op = tok.text
        if op in "+-":
            if isinstance(lhs, _Exp) or isinstance(rhs, _Exp):
                raise NonPolynomialError(
                    "exp(...) can only be multiplied, not added", tok.line, tok.column
                )
            return lhs + rhs if op == "+" else lhs - rhs
        if op == "*":
            if isinstance(lhs, _Exp) and isinstance(rhs, _Exp):
                return _Exp(lhs.g + rhs.g, lhs.p * rhs.p)
            if isinstance(lhs, _Exp):
                return _Exp(lhs.g, lhs.p * rhs)
            if isinstance(rhs, _Exp):
                return _Exp(rhs.g, lhs * rhs.p)
            return lhs * rhs
        if op == "/":
            if isinstance(rhs, _Exp) or not rhs.is_constant:
                raise NonPolynomialError(
                    "division by a nonconstant expression", tok.line, tok.column
                )
            if rhs.is_zero:
                raise ParseError("division by zero", tok.line, tok.column)
            if isinstance(lhs, _Exp):
                return _Exp(lhs.g, lhs.p / rhs)
            return lhs / rhs
        # "^"
        n = self.exponent(tok, rhs)
        if isinstance(lhs, _Exp):
            return _Exp(lhs.g * n, lhs.p ** n)
        return lhs ** n

    def exponent(self, tok, value):
        if isinstance(value, _Exp) or not value.is_constant or not value.is_real:
            raise NonPolynomialError("exponent must be a constant", tok.line, tok.column)
        n = value.constant_term
        if n.denominator != 1 or n < 0:
            raise NonPolynomialError(
                f"exponent must be a nonnegative integer, got {n}", tok.line, tok.column
            )
        return int(n)


def _parse_expression(text, params=None, allow_exp=False, line=1, column=1, declared=()):
    tokens = tokenize(text, line, column)
    parser = _ExpressionParser(tokens, params=params, allow_exp=allow_exp, declared=declared)
    return parser.parse()


def parse_poly(text, params=None):
    return _parse_expression(text, params=params)


def parse_multiplier(text, params=None):
    """Parse ``<poly>``, ``exp(<poly>)`` or products of both."""
    value = _parse_expression(text, params=params, allow_exp=True)
    if isinstance(value, _Exp):
        return ExpPolyMultiplier(value.g, value.p)
    return PolyMultiplier(value)


def parse_curves(text, params=None):
    sep = ";" if ";" in text else ","
    return [parse_poly(part, params) for part in text.split(sep) if part.strip()]


_PARAM_RE = re.compile(r"param\s+(?P<name>[A-Za-z_][A-Za-z_0-9]*)\s*=\s*(?P<value>.*)$")
_COMPONENT_RE = re.compile(r"(?P<name>[PQ])\s*=\s*(?P<value>.*)$")


def parse_system(text):
    params, components = {}, {}
    declared = {
        m.group("name")
        for m in (_PARAM_RE.match(raw.split("#", 1)[0].strip()) for raw in text.splitlines())
        if m
    }
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _PARAM_RE.match(body)
        if m:
            name = m.group("name")
            column = indent + m.start("value") + 1
            if name in RESERVED:
                raise ParseError(f"reserved name {name!r}", lineno, indent + 1)
            if name in params:
                raise ParseError(f"parameter {name!r} defined twice", lineno, indent + 1)
            value = _parse_expression(
                m.group("value"),
                params=dict(params),
                line=lineno,
                column=column,
                declared=declared,
            )
            if not value.is_constant or not value.is_real:
                raise ParseError(
                    f"parameter {name!r} must be a real number", lineno, column
                )
            params[name] = value.constant_term
            continue
        m = _COMPONENT_RE.match(body)
        if m:
            name = m.group("name")
            if name in components:
                raise ParseError(f"{name} defined twice", lineno, indent + 1)
            components[name] = (m.group("value"), lineno, indent + m.start("value") + 1)
            continue
        raise ParseError(
            "expected 'P = <expr>', 'Q = <expr>' or 'param <name> = <number>'",
            lineno,
            indent + 1,
        )

    polys = {}
    for name in ("P", "Q"):
        if name not in components:
            raise ParseError(f"missing '{name} = ...' line", 1, 1)
        expr, lineno, column = components[name]
        poly = _parse_expression(expr, params=params, line=lineno, column=column)
        if not poly.is_real:
            raise ParseError(f"{name} must have real coefficients", lineno, column)
        polys[name] = poly
    return VectorField(polys["P"], polys["Q"], params=params, source_text=text)


def print_system(X):
    lines = [f"P = {X.p}", f"Q = {X.q}"]
    for name in sorted(X.params):
        lines.append(f"param {name} = {format_rational(X.params[name])}")
    return "\n".join(lines) + "\n"
