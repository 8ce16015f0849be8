"""The quadratic field Q(sqrt 2), used only for conjugation certificates."""
from __future__ import annotations

from fractions import Fraction


class QSqrt2:
    """a + b*sqrt(2) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def lift(x):
        return x if isinstance(x, QSqrt2) else QSqrt2(x, 0)

    def __add__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return QSqrt2.lift(o) - self

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QSqrt2.lift(o)
        n = o.a * o.a - 2 * o.b * o.b
        return self * QSqrt2(o.a / n, -o.b / n)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QSqrt2(o)
        if not isinstance(o, QSqrt2):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt2"
        return f"{self.a}+{self.b}*sqrt2"


SQRT2 = QSqrt2(0, 1)
