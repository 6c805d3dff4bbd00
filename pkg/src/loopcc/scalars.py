"""Exact Gaussian-rational arithmetic.

Every matrix entry and parameter in this package is an element of Q(i),
so each identity check is a strict equality with no tolerances.  Rationals
are `fractions.Fraction` (already canonical: reduced, positive denominator);
`ExactComplex` pairs two of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]


def parse_rational(text: RationalLike) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text))


def render_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction):
    """Exact square root of a non-negative rational, or None."""
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True, slots=True)
class ExactComplex:
    """An element of Q(i), with structural equality and hashing."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "ExactComplex") -> "ExactComplex":
        return self * other.inv()

    def inv(self) -> "ExactComplex":
        """Multiplicative inverse; raises ZeroDivisionError on 0."""
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return ExactComplex(self.re / n, -self.im / n)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sqrt(self):
        """A square root in Q(i) if one exists, else None.

        Of the two roots +/-w the one with lexicographically non-negative
        (re, im) is returned; this branch choice is a repository convention.
        """
        a, b = self.re, self.im
        if b == 0:
            r = rational_sqrt(a if a >= 0 else -a)
            if r is None:
                return None
            w = ExactComplex(r, Fraction(0)) if a >= 0 else ExactComplex(Fraction(0), r)
        else:
            # w = x + yi with x^2 - y^2 = a, 2xy = b needs |self| and then
            # (a + |self|)/2 to be rational squares.
            n = rational_sqrt(a * a + b * b)
            if n is None:
                return None
            x = rational_sqrt((a + n) / 2)
            if x is None or x == 0:
                return None
            w = ExactComplex(x, b / (2 * x))
        if w.re > 0 or (w.re == 0 and w.im >= 0):
            return w
        return -w

    def to_json(self) -> dict:
        return {"re": render_rational(self.re), "im": render_rational(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactComplex":
        return cls(parse_rational(obj["re"]), parse_rational(obj["im"]))

    def __str__(self) -> str:
        if self.im == 0:
            return render_rational(self.re)
        if self.re == 0:
            return f"{render_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{render_rational(self.re)}{sign}{render_rational(abs(self.im))}i"


def ec(re: RationalLike = 0, im: RationalLike = 0) -> ExactComplex:
    """Convenience constructor: ec(2), ec("1/2", -3), ec(Fraction(3, 4))."""
    return ExactComplex(parse_rational(re), parse_rational(im))


ZERO = ec(0)
ONE = ec(1)
MINUS_ONE = ec(-1)
I = ec(0, 1)
