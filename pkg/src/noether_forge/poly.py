"""Polynomials and rational functions in one parameter with rational coefficients.

Grammar for the string form (whitespace ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" INT)?
    atom    := NUMBER | "t" | "x" | "(" expr ")"

``x`` is accepted as an alias of ``t``.  Division is allowed and yields a
rational function; :func:`parse_polynomial` rejects non-constant denominators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from noether_forge.errors import ParseError

T = sp.Symbol("t")
U = sp.Symbol("u")


def poly(expr) -> sp.Poly:
    return sp.Poly(expr, T, domain=sp.QQ)


ONE = poly(1)


@dataclass(frozen=True)
class RationalFunction:
    """``num / den`` in lowest terms with a monic denominator."""

    num: sp.Poly
    den: sp.Poly

    @classmethod
    def make(cls, num: sp.Poly, den: sp.Poly) -> "RationalFunction":
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        g = sp.gcd(num, den)
        num = sp.div(num, g)[0]
        den = sp.div(den, g)[0]
        lc = den.LC()
        return cls(num.mul_ground(1 / lc) if lc != 1 else num, den.monic())

    @classmethod
    def from_poly(cls, p: sp.Poly) -> "RationalFunction":
        return cls(p, ONE)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def pole_order_at_infinity(self) -> int:
        if self.num.is_zero:
            return 0
        return self.num.degree() - self.den.degree()

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.make(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction.make(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction.make(self.den**-k, self.num**-k)
        return RationalFunction(self.num**k, self.den**k)

    def __str__(self) -> str:
        n = str(self.num.as_expr())
        if self.is_polynomial:
            return n
        return f"({n})/({self.den.as_expr()})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> RationalFunction:
        if not self.text.strip():
            self.error("empty expression", 0)
        out = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return out

    def expr(self):
        out = self.term()
        while True:
            if self.take("+"):
                out = out + self.term()
            elif self.take("-"):
                out = out - self.term()
            else:
                return out

    def term(self):
        out = self.unary()
        while True:
            if self.take("*"):
                out = out * self.unary()
            elif self.peek() == "/":
                at = self.pos
                self.pos += 1
                rhs = self.unary()
                if rhs.num.is_zero:
                    self.error("division by zero", at)
                out = out / rhs
            else:
                return out

    def unary(self):
        if self.take("-"):
            return -self.unary()
        if self.take("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.take("^"):
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected a nonnegative integer exponent")
            base = base ** int(self.text[start : self.pos])
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return out
        if ch in ("t", "x"):
            self.pos += 1
            return RationalFunction.from_poly(poly(T))
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return RationalFunction.from_poly(poly(int(self.text[start : self.pos])))
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")


def parse_rational_function(text: str) -> RationalFunction:
    return _Parser(text).parse()


def parse_polynomial(text: str) -> sp.Poly:
    f = parse_rational_function(text)
    if not f.is_polynomial:
        raise ParseError("expected a polynomial, got a rational function", None, text)
    return f.num


def parse_rational(value) -> Fraction:
    """Parse a fiber coordinate: int, ``"a/b"`` string, or Fraction."""
    try:
        return Fraction(value)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"not a rational number: {value!r}", None, str(value)) from exc


def to_text(p: sp.Poly) -> str:
    return str(p.as_expr())


def taylor(p: sp.Poly, c: Fraction, order: int) -> list:
    """Coefficients of ``(t - c)^0 .. (t - c)^order`` in the expansion of p at c."""
    shifted = p.shift(sp.Rational(c.numerator, c.denominator))
    coeffs = shifted.all_coeffs()[::-1]
    out = [Fraction(int(x.p), int(x.q)) for x in coeffs[: order + 1]]
    return out + [Fraction(0)] * (order + 1 - len(out))


def order_at(p: sp.Poly, c: Fraction) -> int:
    """Vanishing order of a nonzero polynomial at ``t = c``."""
    if p.is_zero:
        raise ValueError("order of the zero polynomial")
    coeffs = taylor(p, c, p.degree())
    return next(i for i, x in enumerate(coeffs) if x != 0)
