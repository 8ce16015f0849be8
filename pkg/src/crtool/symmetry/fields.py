"""Holomorphic polynomial vector fields and polynomial self-maps of C^{n+1}."""
from __future__ import annotations

from fractions import Fraction

from ..ring import GaussRat, Poly, VarTable, holo_coords


class FieldError(ValueError):
    pass


class HoloField:
    """sum_a comps[a] d/da over the coordinates a in (w, z1, .., z{n-1}, zeta)."""

    __slots__ = ("n", "comps")

    def __init__(self, n, comps=None):
        self.n = n
        tab = VarTable.chart(n)
        coords = holo_coords(n)
        out = {}
        for name, p in (comps or {}).items():
            if name not in coords:
                raise FieldError(f"unknown coordinate {name!r} for n={n}")
            if not isinstance(p, Poly):
                p = Poly.const(tab, p)
            for v in p.variables():
                if tab.kinds[v] != "holomorphic":
                    raise FieldError(f"coefficient of d/d{name} depends on non-holomorphic {v}")
            if p.terms:
                out[name] = p
        self.comps = out

    @property
    def table(self):
        return VarTable.chart(self.n)

    def coords(self):
        return holo_coords(self.n)

    def __getitem__(self, name):
        return self.comps.get(name) or Poly.zero(self.table)

    @property
    def h(self):
        return self["w"]

    @property
    def g(self):
        return self["zeta"]

    def f(self, j):
        return self[f"z{j}"]

    def is_zero(self):
        return not self.comps

    def _check(self, other):
        if not isinstance(other, HoloField):
            raise TypeError("expected a HoloField")
        if other.n != self.n:
            raise FieldError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other):
        self._check(other)
        keys = set(self.comps) | set(other.comps)
        return HoloField(self.n, {k: self[k] + other[k] for k in keys})

    def __sub__(self, other):
        self._check(other)
        keys = set(self.comps) | set(other.comps)
        return HoloField(self.n, {k: self[k] - other[k] for k in keys})

    def __neg__(self):
        return HoloField(self.n, {k: -p for k, p in self.comps.items()})

    def scale(self, c):
        return HoloField(self.n, {k: p.scale(c) for k, p in self.comps.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HoloField) and self.n == other.n and self.comps == other.comps

    def __hash__(self):
        return hash((self.n, frozenset((k, hash(p)) for k, p in self.comps.items())))

    def apply(self, p: Poly) -> Poly:
        """Derivation X(p) = sum_a X^a dp/da."""
        out = Poly.zero(self.table)
        for name, c in self.comps.items():
            d = p.diff(name)
            if d.terms:
                out = out + c * d
        return out

    def max_degree(self):
        return max((p.degree() for p in self.comps.values()), default=-1)

    def to_json(self):
        return {name: self.comps[name].to_json() for name in self.coords() if name in self.comps}

    @classmethod
    def from_json(cls, n, data):
        tab = VarTable.chart(n)
        return cls(n, {k: Poly.from_json(tab, v) for k, v in data.items()})

    def __str__(self):
        if not self.comps:
            return "0"
        parts = []
        for name in self.coords():
            if name in self.comps:
                parts.append(f"({self.comps[name]})*d/d{name}")
        return " + ".join(parts)

    __repr__ = __str__


def lie_bracket(X: HoloField, Y: HoloField) -> HoloField:
    X._check(Y)
    comps = {}
    for a in X.coords():
        c = X.apply(Y[a]) - Y.apply(X[a])
        if c.terms:
            comps[a] = c
    return HoloField(X.n, comps)


def coordinate_field(n, name, coeff=1):
    return HoloField(n, {name: Poly.const(VarTable.chart(n), coeff)})


# polynomial maps -----------------------------------------------------------

class HoloMap:
    """A polynomial self-map of C^{n+1}, given by its coordinate components."""

    __slots__ = ("n", "comps")

    def __init__(self, n, comps=None):
        self.n = n
        tab = VarTable.chart(n)
        full = {a: Poly.var(tab, a) for a in holo_coords(n)}
        for a, p in (comps or {}).items():
            if a not in full:
                raise FieldError(f"unknown coordinate {a!r}")
            full[a] = p if isinstance(p, Poly) else Poly.const(tab, p)
        self.comps = full

    @classmethod
    def identity(cls, n):
        return cls(n)

    @property
    def table(self):
        return VarTable.chart(self.n)

    def __getitem__(self, a):
        return self.comps[a]

    def __call__(self, other):
        """Composition self o other."""
        if isinstance(other, HoloMap):
            return HoloMap(self.n, {a: p.subs(other.comps) for a, p in self.comps.items()})
        raise TypeError("HoloMap can only be composed with a HoloMap")

    def then(self, other):
        """other o self (apply self first)."""
        return other(self)

    def evaluate(self, point):
        """Image of a point given as coordinate -> scalar."""
        return {a: p.evaluate(point) for a, p in self.comps.items()}

    def is_identity(self):
        tab = self.table
        return all(p == Poly.var(tab, a) for a, p in self.comps.items())

    def __eq__(self, other):
        return isinstance(other, HoloMap) and self.n == other.n and self.comps == other.comps

    def to_json(self):
        return {a: self.comps[a].to_json() for a in holo_coords(self.n)}

    def __str__(self):
        return "; ".join(f"{a} -> {self.comps[a]}" for a in holo_coords(self.n))


def pushforward(X: HoloField, phi: HoloMap, phi_inv: HoloMap) -> HoloField:
    """(phi_* X)(q) = Dphi(phi^-1 q) X(phi^-1 q) for a polynomial automorphism phi."""
    comps = {}
    for a in X.coords():
        acc = Poly.zero(X.table)
        for b, c in X.comps.items():
            d = phi[a].diff(b)
            if d.terms:
                acc = acc + d * c
        comps[a] = acc.subs(phi_inv.comps)
    return HoloField(X.n, comps)


def check_inverse(phi: HoloMap, phi_inv: HoloMap) -> bool:
    return phi(phi_inv).is_identity() and phi_inv(phi).is_identity()


def gauss(re, im=0):
    return GaussRat.make(Fraction(re), Fraction(im))
