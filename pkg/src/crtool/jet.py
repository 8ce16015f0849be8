"""Truncated Maclaurin series of the perturbation f and the closed-form families.

A :class:`Jet` of order D stores a_0..a_D with f(x) = sum a_k x^k + O(x^{D+1}).
Jets flagged ``exact`` are polynomials equal to their truncation, so they may
be extended to any order and shifted by nonzero amounts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .ring import Poly, as_rat, format_rat, parse_rat


class JetError(ValueError):
    pass


class Jet:
    __slots__ = ("order", "coeffs", "exact")

    def __init__(self, coeffs, order=None, exact=False):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise JetError("jet order must be non-negative")
        if len(coeffs) > order + 1:
            if exact and any(coeffs[order + 1:]):
                raise JetError("exact jet has terms above its order")
            coeffs = coeffs[: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)
        self.exact = bool(exact)

    @classmethod
    def zero(cls, order=4):
        return cls([], order, exact=True)

    @classmethod
    def monomial(cls, m, a=1, order=None):
        order = max(m, 4) if order is None else order
        c = [Fraction(0)] * (order + 1)
        if m <= order:
            c[m] = Fraction(a)
        return cls(c, order, exact=m <= order)

    @classmethod
    def polynomial(cls, coeffs, order=None):
        coeffs = list(coeffs)
        order = max(len(coeffs) - 1, 4) if order is None else order
        return cls(coeffs, order, exact=True)

    def __getitem__(self, k):
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            if self.exact:
                return Fraction(0)
            raise JetError(f"coefficient a_{k} lies beyond the jet order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other):
        return isinstance(other, Jet) and (self.order, self.coeffs, self.exact) == (other.order, other.coeffs, other.exact)

    def __hash__(self):
        return hash((self.order, self.coeffs, self.exact))

    def __repr__(self):
        body = ", ".join(format_rat(c) for c in self.coeffs)
        return f"Jet(order={self.order}, exact={self.exact}, [{body}])"

    def is_zero(self):
        return not any(self.coeffs)

    def degree(self):
        """Index of the highest nonzero coefficient, -1 for the zero jet."""
        for k in range(self.order, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def support(self):
        return [k for k, c in enumerate(self.coeffs) if c]

    def valuation(self):
        s = self.support()
        return s[0] if s else None

    def with_order(self, order):
        """Re-truncate; raising the order is only possible for exact jets."""
        if order == self.order:
            return self
        if order > self.order and not self.exact:
            raise JetError("cannot raise the order of a non-exact jet")
        exact = self.exact and self.degree() <= order
        return Jet(self.coeffs[: order + 1], order, exact=exact)

    def derivative(self, k=1):
        c = list(self.coeffs)
        order = self.order
        for _ in range(k):
            if order == 0:
                return Jet([], 0, exact=self.exact)
            c = [i * c[i] for i in range(1, order + 1)]
            order -= 1
        return Jet(c, order, exact=self.exact)

    def value_at_zero(self, k=0):
        """f^(k)(0) = k! a_k."""
        return factorial(k) * self[k]

    def poly(self, table, var):
        """The jet as a polynomial in ``var`` of the given table."""
        x = Poly.var(table, var)
        out = Poly.zero(table)
        power = Poly.const(table, 1)
        for c in self.coeffs:
            if c:
                out = out + power.scale(c)
            power = power * x
        return out

    def to_json(self):
        return {"order": self.order, "coeffs": [format_rat(c) for c in self.coeffs], "exact": self.exact}

    @classmethod
    def from_json(cls, data):
        coeffs = [parse_rat(c) for c in data["coeffs"]]
        return cls(coeffs, data["order"], exact=data.get("exact", False))


def _align(a: Jet, b: Jet, need=None):
    """Bring two jets to a common order for binary operations."""
    if a.exact and b.exact:
        order = max(a.order, b.order, need or 0)
        return a.with_order(order), b.with_order(order), order, True
    order = min(x.order for x in (a, b) if not x.exact)
    return a.with_order(order), b.with_order(order), order, False


def add(a: Jet, b: Jet) -> Jet:
    a2, b2, order, exact = _align(a, b)
    return Jet([x + y for x, y in zip(a2.coeffs, b2.coeffs)], order, exact=exact)


def sub(a: Jet, b: Jet) -> Jet:
    return add(a, scale(b, -1))


def mul(a: Jet, b: Jet) -> Jet:
    need = None
    if a.exact and b.exact:
        need = max(a.degree(), 0) + max(b.degree(), 0)
    a2, b2, order, exact = _align(a, b, need)
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a2.coeffs):
        if not x:
            continue
        for j in range(order + 1 - i):
            y = b2.coeffs[j]
            if y:
                out[i + j] += x * y
    return Jet(out, order, exact=exact)


def scale(f: Jet, c1) -> Jet:
    c1 = as_rat(c1)
    return Jet([c1 * c for c in f.coeffs], f.order, exact=f.exact)


def compose_affine(f: Jet, c2, b=0) -> Jet:
    """Jet of x -> f(c2 x + b)."""
    c2, b = as_rat(c2), as_rat(b)
    if b == 0:
        return Jet([c * c2**k for k, c in enumerate(f.coeffs)], f.order, exact=f.exact)
    if not f.exact:
        raise JetError("shifting a non-exact jet needs coefficients beyond its order")
    deg = f.degree()
    out = [Fraction(0)] * (f.order + 1)
    for k in range(deg + 1):
        a = f.coeffs[k]
        if not a:
            continue
        # a (c2 x + b)^k
        for i in range(k + 1):
            out[i] += a * comb(k, i) * c2**i * b ** (k - i)
    return Jet(out, f.order, exact=True)


def recenter(f: Jet, x1star) -> Jet:
    """Jet of x -> f(x - x1*) - f(-x1*)."""
    x1star = as_rat(x1star)
    if x1star == 0:
        return Jet((0,) + f.coeffs[1:], f.order, exact=f.exact)
    g = compose_affine(f, 1, -x1star)
    return Jet((0,) + g.coeffs[1:], g.order, exact=True)


# families -----------------------------------------------------------------

FAMILY_NAMES = ("Zero", "Monomial", "TypeI", "TypeII", "TypeIII", "TypeIV", "TypeV", "TypeVI")


@dataclass(frozen=True)
class FamilyTag:
    name: str
    m: int | None = None
    a: Fraction | None = None

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise JetError(f"unknown family {self.name!r}")
        if self.name == "Monomial":
            if self.m is None or self.m < 4 or self.a is None or self.a == 0:
                raise JetError("Monomial needs m >= 4 and a nonzero coefficient a")
            object.__setattr__(self, "a", Fraction(self.a))
        elif self.name == "TypeI":
            if self.a is None:
                raise JetError("TypeI needs the exponent a")
            object.__setattr__(self, "a", Fraction(self.a))

    @property
    def degenerate(self):
        """TypeI(a) with a in {0,1,2,3}: f is at most cubic, normalizing to zero."""
        return self.name == "TypeI" and self.a in (0, 1, 2, 3)

    def to_json(self):
        out = {"name": self.name}
        if self.m is not None:
            out["m"] = self.m
        if self.a is not None:
            out["a"] = format_rat(self.a)
        return out

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            return cls(data)
        a = data.get("a")
        return cls(data["name"], data.get("m"), parse_rat(a) if a is not None else None)

    def __str__(self):
        if self.name == "Monomial":
            return f"Monomial(m={self.m}, a={format_rat(self.a)})"
        if self.name == "TypeI":
            return f"TypeI(a={format_rat(self.a)})"
        return self.name


def _gbinom(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (a - i) / (i + 1)
    return out


def _log1p(order):
    """Jet of ln(1 + x)."""
    return Jet([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)], order)


def _shifted_power(p, order):
    """(1 + x)^p for a non-negative integer p, as an exact jet."""
    return Jet([comb(p, k) for k in range(p + 1)], max(order, p), exact=True).with_order(order)


def family_jet(tag: FamilyTag, order: int) -> Jet:
    if order < 4:
        raise JetError("family jets need order >= 4")
    name = tag.name
    if name == "Zero":
        return Jet.zero(order)
    if name == "Monomial":
        return Jet.monomial(tag.m, tag.a, order)
    if name == "TypeI":
        a = tag.a
        c = [Fraction(0), Fraction(0)] + [_gbinom(a, k) for k in range(2, order + 1)]
        exact = a.denominator == 1 and 0 <= a <= order
        return Jet(c, order, exact=exact)
    if name == "TypeII":
        return Jet([0, 0] + [Fraction(1, factorial(k)) for k in range(2, order + 1)], order)
    log = _log1p(order)
    x = Jet([0, 1], order, exact=True)
    if name == "TypeIII":
        return sub(log, x)
    if name == "TypeIV":
        return sub(mul(_shifted_power(1, order), log), x)
    if name == "TypeV":
        sq = _shifted_power(2, order)
        return add(sub(scale(mul(sq, log), 2), sq), Jet([1], order, exact=True))
    if name == "TypeVI":
        cu = _shifted_power(3, order)
        return add(sub(scale(mul(cu, log), 6), scale(cu, 2)), Jet([2], order, exact=True))
    raise JetError(f"unknown family {name!r}")


def jet_from_spec(data) -> Jet:
    """Jet from its serialized form or ``{"family": tag, "order": D}``."""
    if "family" in data:
        return family_jet(FamilyTag.from_json(data["family"]), data["order"])
    return Jet.from_json(data)


# normalization ------------------------------------------------------------

@dataclass
class NormalizationRecord:
    """What :func:`normalize` did.

    ``removed`` holds a_0..a_3 of the input (subtracted by the polynomial
    change of coordinates ``remove_map``).  ``dilation`` is lambda = f''''(0)
    of the shifted jet, applied as f -> lambda^-5 f(lambda x); ``sign`` is its
    sign.  With ``n`` given, ``weights`` lists the exponents k with
    coordinate -> lambda^k coordinate realizing the dilation on the hypersurface.
    """

    removed: tuple
    dilation: Fraction | None
    sign: int
    n: int | None = None
    weights: dict = field(default_factory=dict)

    @property
    def identity(self):
        return not any(self.removed) and self.dilation in (None, 1)

    def to_json(self):
        return {
            "removed": [format_rat(c) for c in self.removed],
            "dilation": None if self.dilation is None else format_rat(self.dilation),
            "sign": self.sign,
            "n": self.n,
            "weights": {k: format_rat(v) for k, v in self.weights.items()},
        }


def dilation_weights(n: int):
    """Weights making the quadric part weight 5 and x1 weight 1."""
    if n < 3:
        raise JetError("dilation weights need n >= 3")
    w = {"x0": Fraction(5), "s": Fraction(3, n - 2)}
    for j in range(1, n):
        w[f"x{j}"] = Fraction(n - 5 + 3 * j, n - 2)
    return w


def strip_low(f: Jet) -> Jet:
    """Remove the constant, linear, quadratic and cubic terms."""
    c = list(f.coeffs)
    for k in range(min(4, len(c))):
        c[k] = Fraction(0)
    return Jet(c, f.order, exact=f.exact)


def normalize(f: Jet, n: int | None = None):
    if f.order < 4:
        raise JetError("normalize needs order >= 4")
    removed = tuple(f.coeffs[:4])
    g = strip_low(f)
    lam = 24 * g.coeffs[4]
    if lam:
        g = scale(compose_affine(g, lam), lam ** -5)
        rec = NormalizationRecord(removed, lam, 1 if lam > 0 else -1, n, dilation_weights(n) if n else {})
    else:
        rec = NormalizationRecord(removed, None, 1, n, {})
    return g, rec


def is_normalized(f: Jet) -> bool:
    return not any(f.coeffs[:4])
