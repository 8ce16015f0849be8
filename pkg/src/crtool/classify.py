"""Jet-level equivalence, homogeneity and symmetry-dimension decisions for u = P + f(x1)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .jet import FamilyTag, Jet, JetError, family_jet, is_normalized, mul, normalize, recenter, strip_low
from .ring import as_rat, format_rat


class ClassifyError(ValueError):
    pass


# equivalence ----------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceWitness:
    """f''''(x) = c1 f*''''(c2 x).

    When c2 is irrational, ``c2`` is None and ``c2_power``/``c2_value`` record
    c2^d = value; ``c1`` is then None and ``c1_scaled`` = c1 c2^m0 is given.
    """

    c1: Fraction | None
    c2: Fraction | None
    degenerate: bool = False
    c2_power: int | None = None
    c2_value: Fraction | None = None
    c1_scaled: Fraction | None = None
    m0: int = 0

    @property
    def rational(self):
        return self.c2 is not None

    def inverse(self):
        if not self.rational:
            return None
        return EquivalenceWitness(1 / self.c1, 1 / self.c2, self.degenerate)

    def compose(self, other: "EquivalenceWitness"):
        """f ~ g by self and g ~ h by other gives f ~ h."""
        if not (self.rational and other.rational):
            return None
        return EquivalenceWitness(self.c1 * other.c1, self.c2 * other.c2, self.degenerate and other.degenerate)

    def to_json(self):
        if self.rational:
            return {"c1": format_rat(self.c1), "c2": format_rat(self.c2), "degenerate": self.degenerate}
        return {"c1": None, "c2": None, "c2_power": self.c2_power, "c2_value": format_rat(self.c2_value),
                "c1_times_c2_pow_m0": format_rat(self.c1_scaled), "m0": self.m0, "degenerate": self.degenerate}


@dataclass
class EquivalenceResult:
    equivalent: bool
    verified_order: int | None
    witness: EquivalenceWitness | None = None
    reason: str = ""

    @property
    def unconditional(self):
        return self.verified_order is None

    def verdict(self):
        if not self.equivalent:
            return False
        return True if self.unconditional else f"to-order-{self.verified_order}"

    def __bool__(self):
        return self.equivalent

    def to_json(self):
        return {"equivalent": self.verdict(), "witness": None if self.witness is None else self.witness.to_json(),
                "reason": self.reason}


def fourth_derivative(f: Jet) -> Jet:
    return f.derivative(4)


def _common(f: Jet, g: Jet):
    if f.exact and g.exact:
        D = max(f.order, g.order, max(f.degree(), g.degree(), 4))
        return f.with_order(D), g.with_order(D), None
    if not f.exact and not g.exact and f.order != g.order:
        raise ClassifyError(f"jets of mismatched order {f.order} and {g.order}")
    D = min(x.order for x in (f, g) if not x.exact)
    return f.with_order(D), g.with_order(D), D


def _root(x: Fraction, k: int):
    from .symmetry.flows import _rational_root

    return _rational_root(x, k)


def equivalent_at_origin(f: Jet, fstar: Jet) -> EquivalenceResult:
    """Search c1, c2 != 0 with f''''(x) = c1 f*''''(c2 x) coefficient-wise."""
    f, fstar, D = _common(f, fstar)
    if D is not None and D < 6:
        raise ClassifyError("order >= 6 is needed to decide equivalence")
    y, ys = fourth_derivative(f), fourth_derivative(fstar)
    sup, sups = y.support(), ys.support()
    if sup != sups:
        return EquivalenceResult(False, D, None, "fourth-derivative supports differ")
    if not sup:
        return EquivalenceResult(True, D, None, "both fourth derivatives vanish")
    m0 = sup[0]
    r0 = y[m0] / ys[m0]
    if len(sup) == 1:
        # c1 c2^m0 = r0: one-parameter family; canonical c2 = 1
        return EquivalenceResult(True, D, EquivalenceWitness(r0, Fraction(1), True), "single coefficient")
    # c2^(m - m0) = r_m for every supported m
    ratios = {m: (y[m] / ys[m]) / r0 for m in sup[1:]}
    d = 0
    for m in ratios:
        d = gcd(d, m - m0)
    tau = _power_from_ratios(ratios, m0, d)
    if tau is None:
        return EquivalenceResult(False, D, None, "no common power of c2 fits")
    for m, r in ratios.items():
        if tau ** ((m - m0) // d) != r:
            return EquivalenceResult(False, D, None, f"coefficient x^{m} of the fourth derivative mismatches")
    if d % 2 == 0 and tau < 0:
        return EquivalenceResult(False, D, None, "c2 would be imaginary")
    c2 = _root(tau, d)
    if c2 is None:
        w = EquivalenceWitness(None, None, False, d, tau, r0, m0)
        return EquivalenceResult(True, D, w, "c2 is an algebraic number")
    c1 = r0 / c2 ** m0
    return EquivalenceResult(True, D, EquivalenceWitness(c1, c2), "")


def _power_from_ratios(ratios, m0, d):
    """tau = c2^d from c2^(m-m0) = r_m via a Bezout combination of the exponents."""
    items = [(m - m0, r) for m, r in ratios.items()]
    e, val = items[0]
    for e2, r2 in items[1:]:
        g, s, t = _egcd(e, e2)
        val = _rpow(val, s) * _rpow(r2, t)
        e = g
    if e != d:
        return None
    return val


def _egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _rpow(x: Fraction, k: int):
    return x ** k if k >= 0 else (1 / x) ** (-k)


def equivalent_at_points(f: Jet, x1p, fstar: Jet, x1pp) -> EquivalenceResult:
    """Equivalence of M_f near a point with Re z1 = x1' and M_f* near Re z1 = x1''."""
    if not (f.exact and fstar.exact):
        raise ClassifyError("comparing at points off the origin needs exact (polynomial) jets")
    return equivalent_at_origin(recenter(f, -as_rat(x1p)), recenter(fstar, -as_rat(x1pp)))


# homogeneity ----------------------------------------------------------------

@dataclass
class HomogeneityResult:
    homogeneous: bool
    c: Fraction | None = None
    family: FamilyTag | None = None
    a: Fraction | None = None
    verified_order: int | None = None
    reason: str = ""
    residual_order: int | None = None

    def to_json(self):
        return {
            "homogeneous": self.homogeneous,
            "c": None if self.c is None else format_rat(self.c),
            "family": None if self.family is None else self.family.to_json(),
            "a": None if self.a is None else format_rat(self.a),
            "verified_order": self.verified_order,
            "reason": self.reason,
        }


def ode_residual(y: Jet, c) -> Jet:
    """y y'' - c (y')^2."""
    c = as_rat(c)
    d1, d2 = y.derivative(), y.derivative(2)
    a, b = mul(y, d2), mul(d1, d1)
    order = min(a.order, b.order)
    coeffs = [a[k] - c * b[k] for k in range(order + 1)]
    return Jet(coeffs, order, exact=a.exact and b.exact)


def homogeneity_test(f: Jet) -> HomogeneityResult:
    if not is_normalized(f):
        raise ClassifyError("homogeneity_test needs a0 = a1 = a2 = a3 = 0")
    D = None if f.exact else f.order
    if not f.exact and f.order < 6:
        raise ClassifyError("order >= 6 is needed to test homogeneity")
    y = fourth_derivative(f if not f.exact else f.with_order(max(f.order, f.degree() + 2, 6)))
    if y.is_zero():
        return HomogeneityResult(True, None, FamilyTag("Zero"), None, D, "f'''' vanishes")
    if y[0] == 0:
        return HomogeneityResult(False, None, None, None, D, "f'''' vanishes at 0 but not identically")
    if y.support() == [0]:
        return HomogeneityResult(True, None, FamilyTag("Monomial", m=4, a=f[4]), None, D, "f'''' is constant")
    d1, d2 = y.derivative(), y.derivative(2)
    yy2, y1y1 = mul(y, d2), mul(d1, d1)
    order = min(yy2.order, y1y1.order)
    k0 = next((k for k in range(order + 1) if y1y1[k]), None)
    if k0 is None:
        return HomogeneityResult(False, None, None, None, D, "(y')^2 vanishes to the available order")
    c = yy2[k0] / y1y1[k0]
    res = [yy2[k] - c * y1y1[k] for k in range(order + 1)]
    bad = next((k for k, r in enumerate(res) if r), None)
    if bad is not None:
        return HomogeneityResult(False, None, None, None, D, f"y y'' - c (y')^2 has a nonzero x^{bad} term",
                                 order)
    tag = _dispatch(c)
    return HomogeneityResult(True, c, tag, tag.a if tag.name == "TypeI" else None, D, "", order)


C_TABLE = {Fraction(1): "TypeII", Fraction(5, 4): "TypeIII", Fraction(4, 3): "TypeIV",
           Fraction(3, 2): "TypeV", Fraction(2): "TypeVI"}


def _dispatch(c: Fraction) -> FamilyTag:
    if c in C_TABLE:
        return FamilyTag(C_TABLE[c])
    return FamilyTag("TypeI", a=(5 - 4 * c) / (1 - c))


def type_one_constant(a) -> Fraction:
    """c = (a - 5)/(a - 4) for y = (1 + x)^(a - 4)."""
    a = as_rat(a)
    if a == 4:
        raise ClassifyError("a = 4 gives a constant fourth derivative")
    return (a - 5) / (a - 4)


@dataclass
class Recognition:
    family: FamilyTag
    c: Fraction | None
    witness: EquivalenceWitness | None
    verified_order: int | None

    def to_json(self):
        return {"family": self.family.to_json(), "c": None if self.c is None else format_rat(self.c),
                "witness": None if self.witness is None else self.witness.to_json(),
                "verified_order": self.verified_order}


def recognize_family(f: Jet) -> Recognition:
    """Name the homogeneous family of f and certify it by an equivalence witness."""
    h = homogeneity_test(f)
    if not h.homogeneous:
        raise ClassifyError(f"not homogeneous: {h.reason}")
    tag = h.family
    if tag.name == "Zero":
        return Recognition(tag, None, None, h.verified_order)
    if tag.name == "Monomial":
        return Recognition(tag, None, EquivalenceWitness(Fraction(1), Fraction(1), True), h.verified_order)
    order = f.order if not f.exact else max(f.order, 12)
    ref = strip_low(family_jet(tag, order))
    probe = f if not f.exact else f.with_order(order)
    res = equivalent_at_origin(probe, ref)
    if not res.equivalent:
        raise ClassifyError(f"{tag} failed certification: {res.reason}")
    return Recognition(tag, h.c, res.witness, res.verified_order)


# symmetry dimension ---------------------------------------------------------

def hol_dimension(f: Jet, n: int) -> int:
    if n < 5:
        raise ClassifyError("symmetry dimensions are classified for n >= 5")
    if not is_normalized(f):
        raise ClassifyError("hol_dimension needs a normalized jet")
    sup = [k for k in f.support()]
    if not sup:
        return 2 * n + 4
    if len(sup) == 1:
        return 2 * n + 3 if sup[0] == 4 else 2 * n + 2
    h = homogeneity_test(f)
    if h.homogeneous:
        return 2 * n + 2
    return 2 * n + 1


def classify(f: Jet, n: int):
    """Normalize, test homogeneity, recognize and size the symmetry algebra."""
    g, rec = normalize(f, n)
    out = {"normalized": g.to_json(), "normalization": rec.to_json()}
    h = homogeneity_test(g)
    out["homogeneous"] = h.homogeneous
    out["c"] = None if h.c is None else format_rat(h.c)
    out["family"] = None
    if h.homogeneous:
        r = recognize_family(g)
        out["family"] = r.family.to_json()
        out["witness"] = None if r.witness is None else r.witness.to_json()
    out["verified_order"] = h.verified_order
    out["hol_dim"] = hol_dimension(g, n) if n >= 5 else None
    return out


# the extra-field ODE --------------------------------------------------------

def weights4_regenerate(p, q, n: int, order: int) -> Jet:
    """Series solution of (n p + 2 q) f = (1 + (p + q) x) f' - 4 x^3 with a0..a3 = 0."""
    if order < 4:
        raise JetError("order >= 4 required")
    p, q = as_rat(p), as_rat(q)
    A, B = n * p + 2 * q, p + q
    a = [Fraction(0)] * (order + 1)
    for k in range(3, order):
        a[k + 1] = ((A - B * k) * a[k] + (4 if k == 3 else 0)) / (k + 1)
    exact = any(A - B * k == 0 for k in range(4, order))
    return Jet(a, order, exact=exact)


def weights4_residual(f: Jet, p, q, n: int) -> Jet:
    """(n p + 2 q) f - (1 + (p + q) x) f' + 4 x^3, truncated to the order of f'."""
    p, q = as_rat(p), as_rat(q)
    A, B = n * p + 2 * q, p + q
    d = f.derivative()
    order = d.order
    out = []
    for k in range(order + 1):
        v = A * f[k] - d[k] - (B * d[k - 1] if k else 0) + (4 if k == 3 else 0)
        out.append(v)
    return Jet(out, order, exact=f.exact)


def weights4_fit(f: Jet, n: int):
    """(p, q) whose series solution is f (a0..a3 = 0, a4 = 1), or None.

    a5 and a6 fix n p + 2 q and p + q; the remaining coefficients are checked.
    """
    if f[4] != 1 or any(f.coeffs[:4]):
        raise ClassifyError("expecting a0..a3 = 0 and a4 = 1")
    if f.order < 6:
        raise ClassifyError("order >= 6 required")
    if n == 2:
        return None
    if f[5] == 0:
        # n p + 2 q = 4 (p + q) makes every later coefficient vanish
        sol = (Fraction(2), Fraction(n - 4))
    else:
        B = 5 * f[5] - 6 * f[6] / f[5]
        A = 5 * f[5] + 4 * B
        p = (A - 2 * B) / (n - 2)
        sol = (p, B - p)
    g = weights4_regenerate(*sol, n, f.order)
    return sol if g.coeffs == f.coeffs else None
