"""Gaussian rationals a + b*i with a, b in Q.

Arithmetic results with zero imaginary part collapse back to ``Fraction`` so
that purely real data keeps a single canonical representation.
"""
from __future__ import annotations

from fractions import Fraction

from .rat import format_rat


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def make(re, im):
        """Build a value, returning a plain Fraction when ``im == 0``."""
        if im == 0:
            return Fraction(re)
        return GaussRat(re, im)

    def conjugate(self):
        return GaussRat.make(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat.make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat.make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussRat.make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return GaussRat(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussRat):
            c, d = other.re, other.im
            n = c * c + d * d
            a, b = self.re, self.im
            return GaussRat.make((a * c + b * d) / n, (b * c - a * d) / n)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(other, 0) / self
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        out, base = Fraction(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({format_rat(self.re)}, {format_rat(self.im)})"


I = GaussRat(0, 1)


def re_part(c) -> Fraction:
    return c.re if isinstance(c, GaussRat) else Fraction(c)


def im_part(c) -> Fraction:
    return c.im if isinstance(c, GaussRat) else Fraction(0)


def conj(c):
    return c.conjugate() if isinstance(c, GaussRat) else c


def is_real(c) -> bool:
    return not isinstance(c, GaussRat) or c.im == 0
