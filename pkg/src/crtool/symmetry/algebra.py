"""Structure constants of spans of holomorphic fields, gradings and ad-matrices."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..ring import GaussRat, format_rat, im_part, re_part
from ..ring.linalg import rank, rref, transpose
from .catalog import basis_m, catalog_field
from .fields import FieldError, HoloField, lie_bracket


def _coeff_str(c):
    if isinstance(c, GaussRat):
        return {"re": format_rat(c.re), "im": format_rat(c.im)}
    return format_rat(c)


def _flatten(X: HoloField, real: bool):
    out = {}
    for a, p in X.comps.items():
        for k, c in p.terms.items():
            if real:
                if re_part(c):
                    out[(a, k, 0)] = re_part(c)
                if im_part(c):
                    out[(a, k, 1)] = im_part(c)
            else:
                out[(a, k)] = c
    return out


class _Span:
    """Coordinates of vectors with respect to an independent family."""

    def __init__(self, vectors, real: bool):
        self.real = real
        self.keys = sorted(set().union(*[v.keys() for v in vectors])) if vectors else []
        rows = [[v.get(k, Fraction(0)) for k in self.keys] for v in vectors]
        self.rank = rank(rows) if rows else 0
        self.size = len(vectors)
        if self.rank != self.size:
            return
        R, pivots = rref(rows)
        self.pivots = [self.keys[p] for p in pivots]
        sub = [[row[p] for p in pivots] for row in rows]
        # invert sub (k x k, rows = vectors) so that target[pivots] = c . sub
        k = len(sub)
        aug = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(k)] for i, r in enumerate(transpose(sub))]
        R2, _ = rref(aug)
        self.inv = [row[k:] for row in R2]
        self.vectors = vectors

    @property
    def independent(self):
        return self.rank == self.size

    def coords(self, vec):
        extra = set(vec) - set(self.keys)
        if any(vec[k] for k in extra):
            return None
        t = [vec.get(k, Fraction(0)) for k in self.pivots]
        c = [sum((self.inv[i][j] * t[j] for j in range(len(t)) if t[j]), Fraction(0)) for i in range(len(t))]
        for key in self.keys:
            got = sum((ci * v.get(key, Fraction(0)) for ci, v in zip(c, self.vectors) if ci), Fraction(0))
            if got != vec.get(key, Fraction(0)):
                return None
        return c


@dataclass
class BracketTable:
    labels: list
    constants: dict
    closed: bool
    dimension: int
    over: str
    antisymmetric: bool = True
    jacobi: bool = True
    offending: list = field(default_factory=list)
    ad_checks: dict = field(default_factory=dict)

    def bracket(self, i, j):
        return self.constants.get((i, j))

    def nonzero_brackets(self):
        for (i, j), c in sorted(self.constants.items()):
            if i < j and c and any(c):
                yield i, j, c

    def to_json(self):
        entries = []
        for i, j, c in self.nonzero_brackets():
            entries.append({
                "left": self.labels[i], "right": self.labels[j],
                "result": {self.labels[k]: _coeff_str(v) for k, v in enumerate(c) if v},
            })
        out = {
            "basis": self.labels, "dimension": self.dimension, "over": self.over,
            "closed": self.closed, "antisymmetric": self.antisymmetric, "jacobi": self.jacobi,
            "brackets": entries,
        }
        if self.offending:
            out["offending"] = self.offending
        if self.ad_checks:
            out["ad_checks"] = self.ad_checks
        return out

    def to_latex(self):
        k = len(self.labels)
        head = " & ".join(f"${lab}$" for lab in self.labels)
        lines = ["\\begin{tabular}{c|" + "c" * k + "}", f"$[\\cdot,\\cdot]$ & {head} \\\\", "\\hline"]
        for i in range(k):
            cells = []
            for j in range(k):
                c = self.constants.get((i, j))
                cells.append(_latex_combo(c, self.labels) if c is not None else "?")
            lines.append(f"${self.labels[i]}$ & " + " & ".join(cells) + " \\\\")
        lines.append("\\end{tabular}")
        return re.sub(r"_(\d{2,})", r"_{\1}", "\n".join(lines))


def _latex_scalar(c):
    if isinstance(c, GaussRat):
        re, im = c.re, c.im
        if not re:
            return f"{_frac(im)}i"
        return f"({_frac(re)}{'+' if im > 0 else '-'}{_frac(abs(im))}i)"
    return _frac(c)


def _frac(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\tfrac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _latex_combo(c, labels):
    terms = []
    for k, v in enumerate(c):
        if not v:
            continue
        if v == 1:
            terms.append(labels[k])
        elif v == -1:
            terms.append("-" + labels[k])
        else:
            terms.append(f"{_latex_scalar(v)}{labels[k]}")
    if not terms:
        return "0"
    return "$" + "+".join(terms).replace("+-", "-") + "$"


def structure_table(fields, labels=None, over="real"):
    """Brackets of all pairs expanded in the span of ``fields``.

    ``over="real"`` expands with real coefficients (the fields span a real Lie
    algebra); ``over="complex"`` allows Q(i) coefficients.
    """
    labels = labels or [f"X{i}" for i in range(len(fields))]
    real = over == "real"
    if not real and over != "complex":
        raise ValueError("over must be 'real' or 'complex'")
    vecs = [_flatten(f, real) for f in fields]
    span = _Span(vecs, real)
    if not span.independent:
        raise FieldError(f"fields are linearly dependent (rank {span.rank} < {span.size})")
    k = len(fields)
    constants, offending = {}, []
    for i in range(k):
        for j in range(k):
            if i == j:
                b = lie_bracket(fields[i], fields[j])
                if not b.is_zero():
                    offending.append((labels[i], labels[j]))
                constants[(i, j)] = [Fraction(0)] * k
                continue
            b = lie_bracket(fields[i], fields[j])
            c = span.coords(_flatten(b, real))
            if c is None:
                offending.append((labels[i], labels[j]))
            constants[(i, j)] = c
    closed = not offending
    anti = all(
        constants[(i, j)] is None or constants[(j, i)] is None
        or all(a == -b for a, b in zip(constants[(i, j)], constants[(j, i)]))
        for i in range(k) for j in range(k)
    )
    jac = _jacobi(constants, k) if closed else False
    return BracketTable(labels, constants, closed, span.rank, over, anti, jac,
                        [f"[{a}, {b}]" for a, b in offending])


def _jacobi(C, k):
    zero = Fraction(0)

    def br(u, v):
        out = [zero] * k
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if vb:
                    cab = C[(a, b)]
                    for m, x in enumerate(cab):
                        if x:
                            out[m] = out[m] + ua * vb * x
        return out

    unit = [[Fraction(1) if a == i else zero for a in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            bij = C[(i, j)]
            for l in range(j + 1, k):
                t1 = br(bij, unit[l])
                t2 = br(C[(j, l)], unit[i])
                t3 = br(C[(l, i)], unit[j])
                if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                    return False
    return True


# gradings -------------------------------------------------------------------

def term_weights(n):
    """Weights of coordinates under U_0 and V_0."""
    wu = {"w": n, "zeta": 1, **{f"z{j}": j for j in range(1, n)}}
    wv = {"w": 2, "zeta": 0, **{f"z{j}": 1 for j in range(1, n)}}
    return wu, wv


def weight_components(X: HoloField):
    """Split X into bi-homogeneous pieces keyed by (U_0 weight, V_0 weight)."""
    wu, wv = term_weights(X.n)
    tab = X.table
    pieces = {}
    for a, p in X.comps.items():
        for key, c in p.terms.items():
            ex = p.exps(key)
            du = sum(e * wu[nm] for nm, e in zip(tab.names, ex) if e) - wu[a]
            dv = sum(e * wv[nm] for nm, e in zip(tab.names, ex) if e) - wv[a]
            pieces.setdefault((du, dv), {}).setdefault(a, {})[key] = c
    from ..ring import Poly

    return {w: HoloField(X.n, {a: Poly(tab, t) for a, t in comps.items()}) for w, comps in sorted(pieces.items())}


@dataclass
class GradingResult:
    eigen: bool
    weights: tuple | None
    components: dict


def grading_weights(X: HoloField) -> GradingResult:
    """Bi-degree (j, k) with [U_0, X] = j X and [V_0, X] = k X."""
    n = X.n
    U0, V0 = catalog_field("U0", n), catalog_field("V0", n)
    comps = weight_components(X)
    if len(comps) == 1:
        (j, k), = comps
        ok = lie_bracket(U0, X) == X.scale(j) and lie_bracket(V0, X) == X.scale(k)
        if ok:
            return GradingResult(True, (j, k), comps)
    return GradingResult(False, None, comps)


# ad-matrices on m_{-1} --------------------------------------------------------

def ad_matrix(n, index):
    """Matrix of ad e_index on (e_1, .., e_{2n-2}); column k holds [e_index, e_k]."""
    basis = basis_m(n)
    fields = [f for _, f in basis]
    sub = fields[1:2 * n - 1]
    span = _Span([_flatten(f, False) for f in sub], False)
    cols = []
    for f in sub:
        c = span.coords(_flatten(lie_bracket(fields[index], f), False))
        if c is None:
            raise FieldError(f"[e_{index}, .] leaves m_-1")
        cols.append(c)
    return transpose(cols)


def _shift(k):
    return [[Fraction(1) if r - c == 1 else Fraction(0) for c in range(k)] for r in range(k)]


def _mm(A, B):
    return [[sum((A[i][t] * B[t][j] for t in range(len(B))), Fraction(0)) for j in range(len(B[0]))] for i in range(len(A))]


def expected_ad_matrices(n):
    """Reference block matrices for ad e_{2n-1} and ad e_{2n}."""
    k = n - 1
    T = _shift(k)
    Dl = [[Fraction(2 - n + 2 * i) if i == j else Fraction(0) for j in range(k)] for i in range(k)]
    DT, TD = _mm(Dl, T), _mm(T, Dl)
    Z = [[Fraction(0)] * k for _ in range(k)]
    T2 = [[2 * x for x in row] for row in T]

    def blocks(a, b, c, d):
        return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]

    return blocks(DT, T2, Z, TD), blocks(TD, Z, T2, DT)


def compare_ad_matrices(n):
    """Entry-wise comparison of computed and reference ad-matrices."""
    got1, got2 = ad_matrix(n, 2 * n - 1), ad_matrix(n, 2 * n)
    exp1, exp2 = expected_ad_matrices(n)
    match1 = all(a == b for ra, rb in zip(got1, exp1) for a, b in zip(ra, rb))
    match2 = all(a == b for ra, rb in zip(got2, exp2) for a, b in zip(ra, rb))
    return {"e_2n-1": match1, "e_2n": match2, "computed": (got1, got2), "expected": (exp1, exp2)}


def heisenberg_check(n):
    """[e_j, e_{2n-1-j}] = e_0 for j = 1..n-1 and all other brackets in m_- vanish."""
    basis = basis_m(n)
    e = [f for _, f in basis]
    bad = []
    for a in range(0, 2 * n - 1):
        for b in range(0, 2 * n - 1):
            br = lie_bracket(e[a], e[b])
            if 1 <= a <= n - 1 and b == 2 * n - 1 - a:
                want = e[0]
            elif 1 <= b <= n - 1 and a == 2 * n - 1 - b:
                want = -e[0]
            else:
                want = HoloField(n)
            if br != want:
                bad.append((a, b))
    return not bad, bad
