"""Sparse multivariate polynomials with exact rational or Gaussian-rational coefficients.

Terms are stored as ``{packed_key: coeff}``.  A packed key holds one 16-bit
exponent field per variable of the table, with the first variable in the most
significant field.  Monomial products are key sums, and for keys of equal
total degree integer order coincides with lexicographic order, which gives
graded-lex order as ``(degree(key), key)``.
"""
from __future__ import annotations

from fractions import Fraction

from . import kernels as K
from .gauss import GaussRat, conj as conj_coeff, im_part, re_part
from .rat import format_rat
from .vars import ANTI, HOLO, VarTable

BITS, MASK = K.BITS, K.MASK
MAX_EXP = MASK

Scalar = (int, Fraction, GaussRat)


def _coerce_scalar(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, GaussRat)):
        return c
    raise TypeError(f"unsupported coefficient {c!r}; exact rationals only")


def key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & MASK
        key >>= BITS
    return d


class VarTableMismatch(ValueError):
    pass


class Poly:
    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms=None):
        self.table = table
        self.terms = terms if terms is not None else {}

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def const(cls, table, c):
        c = _coerce_scalar(c)
        return cls(table, {0: c} if c else {})

    @classmethod
    def var(cls, table, name):
        return cls(table, {1 << table.shift(name): Fraction(1)})

    @classmethod
    def monomial(cls, table, powers, coeff=1):
        """``coeff * prod(name**e)`` for a mapping ``powers``."""
        key = 0
        for name, e in powers.items():
            if e < 0 or e > MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            key += e << table.shift(name)
        coeff = _coerce_scalar(coeff)
        return cls(table, {key: coeff} if coeff else {})

    @classmethod
    def from_exps(cls, table, items):
        """Build from ``{exponent_tuple: coeff}`` or an iterable of pairs."""
        if isinstance(items, dict):
            items = items.items()
        n = len(table)
        terms = {}
        for exps, c in items:
            if len(exps) != n:
                raise ValueError("exponent vector length does not match the table")
            key = 0
            for e in exps:
                if e < 0 or e > MAX_EXP:
                    raise ValueError(f"exponent {e} out of range")
                key = (key << BITS) | e
            c = _coerce_scalar(c)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return cls(table, terms)

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.table is not self.table and other.table != self.table:
                raise VarTableMismatch("operands use different variable tables")
            return other
        return Poly.const(self.table, other)

    # structure ------------------------------------------------------------
    def exps(self, key):
        n = len(self.table)
        out = [0] * n
        for i in range(n - 1, -1, -1):
            out[i] = key & MASK
            key >>= BITS
        return tuple(out)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((key_degree(k) for k in self.terms), default=-1)

    def min_degree(self):
        return min((key_degree(k) for k in self.terms), default=-1)

    def degree_in(self, name):
        sh = self.table.shift(name)
        return max(((k >> sh) & MASK for k in self.terms), default=-1)

    def variables(self):
        used = 0
        for k in self.terms:
            used |= k
        return [name for name in self.table.names if (used >> self.table.shifts[name]) & MASK]

    def coeff(self, powers):
        """Coefficient of the monomial given as a mapping name -> exponent."""
        key = sum(e << self.table.shift(name) for name, e in powers.items())
        return self.terms.get(key, Fraction(0))

    def sorted_terms(self):
        """``(key, coeff)`` pairs in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kc: (key_degree(kc[0]), kc[0]), reverse=True)

    def leading(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms, key=lambda k: (key_degree(k), k))
        return k, self.terms[k]

    def is_real(self):
        return all(not isinstance(c, GaussRat) for c in self.terms.values())

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        return Poly(self.table, K.add_terms(self.terms, other.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Poly(self.table, K.add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Poly(self.table, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = self._lift(other)
            if not self.terms or not other.terms:
                return Poly(self.table, {})
            return Poly(self.table, K.mul_terms(self.terms, other.terms))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = _coerce_scalar(c)
        return Poly(self.table, K.scale_terms(self.terms, c))

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.divexact(c)
        c = _coerce_scalar(c)
        return self.scale(1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        if k and self.degree() * k > MAX_EXP:
            raise OverflowError("exponent field overflow")
        out = Poly.const(self.table, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, Scalar):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    # calculus and substitution -----------------------------------------
    def diff(self, name):
        return Poly(self.table, K.diff_terms(self.terms, self.table.shift(name)))

    def subs(self, bindings):
        """Simultaneous substitution ``name -> Poly or scalar``."""
        if not bindings:
            return self
        bound = []
        for name, value in bindings.items():
            sh = self.table.shift(name)
            bound.append((sh, self._lift(value)))
        bmask = 0
        for sh, _ in bound:
            bmask |= MASK << sh
        groups = {}
        for k, c in self.terms.items():
            bk = k & bmask
            g = groups.get(bk)
            if g is None:
                groups[bk] = {k - bk: c}
            else:
                g[k - bk] = c
        powers = {sh: [Poly.const(self.table, 1), p] for sh, p in bound}

        def power(sh, e):
            cache = powers[sh]
            while len(cache) <= e:
                cache.append(cache[-1] * cache[1])
            return cache[e]

        out = {}
        for bk, rest in groups.items():
            factor = None
            for sh, _ in bound:
                e = (bk >> sh) & MASK
                if e:
                    pe = power(sh, e)
                    factor = pe if factor is None else factor * pe
            if factor is None:
                piece = rest
            else:
                if not factor.terms:
                    continue
                piece = K.mul_terms(rest, factor.terms)
            K.iadd_terms(out, piece)
        return Poly(self.table, out)

    def evaluate(self, point):
        """Substitute constants; returns a scalar when every variable is bound."""
        p = self.subs({name: Poly.const(self.table, value) for name, value in point.items()})
        if p.is_constant():
            return p.constant_term()
        return p

    def truncate(self, degree):
        """Drop all terms of total degree above ``degree``."""
        return Poly(self.table, {k: c for k, c in self.terms.items() if key_degree(k) <= degree})

    def homogeneous_part(self, degree):
        return Poly(self.table, {k: c for k, c in self.terms.items() if key_degree(k) == degree})

    # exact division -----------------------------------------------------
    def divexact(self, d):
        """Quotient ``self / d``; raises ``ArithmeticError`` when not exact."""
        d = self._lift(d)
        if not d.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if d.is_constant():
            return self.scale(1 / d.constant_term())
        lk, lc = d.leading()
        lex = self.exps(lk)
        rem = dict(self.terms)
        quot = {}
        while rem:
            k = max(rem, key=lambda k: (key_degree(k), k))
            ex = self.exps(k)
            if any(a < b for a, b in zip(ex, lex)):
                raise ArithmeticError("polynomial division is not exact")
            qk, qc = k - lk, rem[k] / lc
            quot[qk] = qc
            K.iadd_terms(rem, K.scale_terms(K.mul_terms({qk: qc}, d.terms), -1))
        return Poly(self.table, quot)

    # complex structure --------------------------------------------------
    def conj(self):
        """Complex conjugate: conjugate coefficients and swap z <-> zb."""
        tab = self.table
        out = {}
        swaps = [(tab.shifts[a], tab.shifts[b]) for a, b in tab.conjpair.items() if tab.kinds[a] == HOLO]
        for k, c in self.terms.items():
            nk = k
            for sa, sb in swaps:
                ea, eb = (k >> sa) & MASK, (k >> sb) & MASK
                nk += (eb - ea) << sa
                nk += (ea - eb) << sb
            out[nk] = conj_coeff(c)
        return Poly(tab, out)

    def realify(self):
        """Split into (real part, imaginary part) after z = x + i y substitution."""
        tab = self.table
        bindings = {}
        for name in self.variables():
            kind = tab.kinds[name]
            if kind == HOLO:
                pair = tab.realpair.get(name)
                sign = 1
            elif kind == ANTI:
                pair = tab.realpair.get(tab.conjpair.get(name))
                sign = -1
            else:
                continue
            if pair is None:
                raise ValueError(f"variable {name!r} has no real pairing")
            re, im = pair
            bindings[name] = Poly.var(tab, re) + Poly.var(tab, im).scale(GaussRat(0, sign))
        full = self.subs(bindings)
        return full.real_coeffs(), full.imag_coeffs()

    def real_coeffs(self):
        return Poly(self.table, {k: re_part(c) for k, c in self.terms.items() if re_part(c)})

    def imag_coeffs(self):
        return Poly(self.table, {k: im_part(c) for k, c in self.terms.items() if im_part(c)})

    # grading ------------------------------------------------------------
    def weight_decompose(self, grading):
        """Map weight -> homogeneous component (weights from ``grading``)."""
        tab = self.table
        used = self.variables()
        missing = [v for v in used if v not in grading.weights]
        if missing:
            raise ValueError(f"grading has no weight for {', '.join(missing)}")
        wts = [(tab.shifts[v], grading.weights[v]) for v in used]
        parts = {}
        for k, c in self.terms.items():
            w = sum((((k >> sh) & MASK) * wt for sh, wt in wts), Fraction(0))
            parts.setdefault(w, {})[k] = c
        return {w: Poly(tab, t) for w, t in sorted(parts.items())}

    # display and serialization -----------------------------------------
    def to_json(self):
        out = []
        for k, c in self.sorted_terms():
            if isinstance(c, GaussRat):
                coeff = {"re": format_rat(c.re), "im": format_rat(c.im)}
            else:
                coeff = format_rat(c)
            out.append({"coeff": coeff, "exps": list(self.exps(k))})
        return out

    @classmethod
    def from_json(cls, table, data):
        from .rat import parse_rat

        items = []
        for term in data:
            c = term["coeff"]
            if isinstance(c, dict):
                c = GaussRat.make(parse_rat(c["re"]), parse_rat(c["im"]))
            else:
                c = parse_rat(c)
            items.append((tuple(term["exps"]), c))
        return cls.from_exps(table, items)

    def monomial_str(self, key, join="*"):
        parts = []
        for name, e in zip(self.table.names, self.exps(key)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return join.join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for k, c in self.sorted_terms():
            mono = self.monomial_str(k)
            pieces.append(_term_str(c, mono))
        s = " + ".join(pieces)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def _term_str(c, mono):
    if isinstance(c, GaussRat):
        cs = f"({format_rat(c.re)}+{format_rat(c.im)}i)".replace("/1+", "+").replace("/1i", "i")
    else:
        cs = str(c)
    if not mono:
        return cs
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    return f"{cs}*{mono}"


class Grading:
    """Rational weights on variables; a monomial weighs the dot product with its exponents."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = {name: Fraction(w) for name, w in weights.items()}

    def weight_of(self, poly, key):
        return sum((e * self.weights[name] for name, e in zip(poly.table.names, poly.exps(key)) if e), Fraction(0))

    def is_homogeneous(self, poly):
        return len(poly.weight_decompose(self)) <= 1
