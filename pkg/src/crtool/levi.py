"""Levi form, Levi kernel, the kernel adjoint operator and the Jordan symbol.

For a graph u = Phi(x, s) the Levi form is represented by the Hessian H of
Phi in the real variables (x_1, .., x_{n-1}, s).  The kernel is spanned by a
polynomial vector v whose last entry is normalized to -1, and the adjoint
operator is represented by A_{jk} = dv_j/dx_k on the first n-1 indices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .ring import Poly, format_rat, real_coords
from .ring.linalg import evaluate_matrix, matmul, matpow, poly_det, rank


class LeviError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class LeviData:
    H: list
    v: list
    A: list


def levi_form(M):
    phi = M.defining_polynomial
    xs = real_coords(M.n)
    first = [phi.diff(a) for a in xs]
    return [[first[j].diff(b) for b in xs] for j in range(len(xs))]


def _apply(H, v):
    return [sum((h * x for h, x in zip(row, v)), Poly.zero(v[0].table)) for row in H]


def _closed_form_kernel(M):
    tab, n = M.table, M.n
    s = Poly.var(tab, "s")
    v = []
    for block, off in zip(M.blocks, M.offsets):
        xs = [Poly.var(tab, f"x{off + i}") for i in range(1, block.size + 1)]
        for i in range(1, block.size + 1):
            entry = Poly.zero(tab)
            for j in range(1, i):
                entry = entry + xs[j - 1] * s ** (i - 1 - j)
            v.append(entry)
    v.append(Poly.const(tab, -1))
    return v


def _upper_minor(H):
    m = len(H) - 1
    return [row[:m] for row in H[:m]]


def _minor_determinant(M, H):
    """Determinant of the leading (n-1)x(n-1) block, blockwise when the model has blocks."""
    minor = _upper_minor(H)
    if getattr(M, "blocks", None):
        det = Poly.const(M.table, 1)
        for block, off in zip(M.blocks, M.offsets):
            sub = [row[off:off + block.size] for row in minor[off:off + block.size]]
            det = det * poly_det(sub)
        return det
    return poly_det(minor)


def _generic_kernel(M, H):
    """Solve A v' = B by Cramer's rule with exact polynomial division."""
    minor = _upper_minor(H)
    m = len(minor)
    rhs = [row[m] for row in H[:m]]
    det = poly_det(minor)
    if not det.terms:
        raise LeviError("leading minor of the Levi form vanishes identically; kernel rank is not 1", det)
    v = []
    for i in range(m):
        Ai = [row[:i] + [rhs[r]] + row[i + 1:] for r, row in enumerate(minor)]
        num = poly_det(Ai)
        try:
            v.append(num.divexact(det))
        except ArithmeticError:
            raise LeviError("kernel field is not polynomial for this structure", det) from None
    v.append(Poly.const(M.table, -1))
    return v


def kernel_field(M, H=None):
    H = H if H is not None else levi_form(M)
    v = None
    if getattr(M, "blocks", None):
        v = _closed_form_kernel(M)
        if any(e.terms for e in _apply(H, v)):
            v = None
    if v is None:
        v = _generic_kernel(M, H)
    residual = _apply(H, v)
    bad = next((e for e in residual if e.terms), None)
    if bad is not None:
        raise LeviError("H v does not vanish; the Levi kernel has rank other than 1", bad)
    return v


def adjoint_operator(M, v=None):
    v = v if v is not None else kernel_field(M)
    xs = real_coords(M.n)[:-1]
    return [[v[j].diff(b) for b in xs] for j in range(len(xs))]


def levi_data(M):
    H = levi_form(M)
    v = kernel_field(M, H)
    return LeviData(H, v, adjoint_operator(M, v))


def toeplitz_shift(k, table=None):
    """T_k: ones on the first subdiagonal ((r, s) entry is 1 iff r - s = 1)."""
    one, zero = (Poly.const(table, 1), Poly.zero(table)) if table else (Fraction(1), Fraction(0))
    return [[one if r - c == 1 else zero for c in range(k)] for r in range(k)]


def model_adjoint(n, table):
    """sum_{j=1}^{n-2} s^{j-1} T_{n-1}^j, the adjoint operator of the single-block model."""
    T = toeplitz_shift(n - 1, table)
    s = Poly.var(table, "s")
    out = [[Poly.zero(table)] * (n - 1) for _ in range(n - 1)]
    P = T
    for j in range(1, n - 1):
        sj = s ** (j - 1)
        out = [[o + p * sj for o, p in zip(orow, prow)] for orow, prow in zip(out, P)]
        P = matmul(P, T)
    return out


# Jordan symbol -----------------------------------------------------------

@dataclass
class JordanType:
    partition: list
    ranks: list
    point: dict
    samples: list = field(default_factory=list)
    constant: bool = True

    def to_json(self):
        return {
            "partition": self.partition,
            "ranks": self.ranks,
            "samples": [p for p in self.samples],
            "constant": self.constant,
        }


def _partition_at(A, point):
    Ae = evaluate_matrix(A, point)
    Ae = [[x.constant_term() if isinstance(x, Poly) else Fraction(x) for x in row] for row in Ae]
    m = len(Ae)
    if m == 0:
        return [], [0]
    if any(x for row in matpow(Ae, m) for x in row):
        raise LeviError("matrix is not nilpotent at the point")
    ranks = [m]
    P = [row[:] for row in Ae]
    for _ in range(m):
        ranks.append(rank(P))
        if ranks[-1] == 0:
            break
        P = matmul(P, Ae)
    while len(ranks) < m + 1:
        ranks.append(0)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, m + 1)]
    exact = [at_least[k] - (at_least[k + 1] if k + 1 < m else 0) for k in range(m)]
    partition = []
    for size in range(m, 0, -1):
        partition += [size] * exact[size - 1]
    return partition, ranks


def _variables(A):
    names = []
    for row in A:
        for e in row:
            if isinstance(e, Poly):
                for name in e.variables():
                    if name not in names:
                        names.append(name)
    return names


def random_rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def jordan_type(A, point=None, seed=0, samples=5):
    """Jordan partition of a nilpotent matrix from the ranks of its powers."""
    names = _variables(A)
    point = {k: Fraction(v) for k, v in (point or {}).items()}
    base = {name: point.get(name, Fraction(0)) for name in names}
    partition, ranks = _partition_at(A, base)
    rng = random.Random(seed)
    sampled = []
    for _ in range(samples if names else 0):
        pt = {name: random_rational(rng) for name in names}
        try:
            sampled.append(_partition_at(A, pt)[0])
        except LeviError:
            sampled.append(None)
    constant = all(p == partition for p in sampled)
    return JordanType(partition, ranks, base, sampled, constant)


# 2-nondegeneracy ----------------------------------------------------------

def check_2nondegeneracy(M, seed=0):
    """Symbolic certificates for a rank-1 Levi kernel and a nonvanishing adjoint operator."""
    H = levi_form(M)
    report = {"levi_degenerate": False, "kernel_rank_1": False, "adjoint_nonvanishing": False,
              "jordan_type": None, "certificates": {}, "passed": False}
    cert = report["certificates"]
    tab = M.table

    minor_det = _minor_determinant(M, H)
    cert["minor_determinant"] = minor_det.to_json()
    minor_const = minor_det.is_constant() and bool(minor_det.terms)
    report["kernel_rank_1"] = minor_const
    if not minor_const:
        report["failure"] = {"condition": "kernel_rank_1", "polynomial": str(minor_det)}
        return report
    cert["minor_determinant_value"] = format_rat(minor_det.constant_term())

    try:
        v = kernel_field(M, H)
    except LeviError as exc:
        report["failure"] = {"condition": "levi_degenerate", "polynomial": str(exc.witness), "message": str(exc)}
        return report
    m = M.n - 1
    schur = H[m][m] - sum((H[m][i] * v[i] for i in range(m)), Poly.zero(tab))
    # det H = det(minor) * (C - B^T v'), and H v = 0 with v_n = -1 certifies det H = 0
    report["levi_degenerate"] = not schur.terms
    cert["kernel_field"] = [e.to_json() for e in v]
    cert["schur_complement"] = schur.to_json()
    if schur.terms:
        report["failure"] = {"condition": "levi_degenerate", "polynomial": str(schur)}
        return report

    A = adjoint_operator(M, v)
    entry = None
    for j in range(m):
        for k in range(m):
            e = A[j][k]
            if e.terms and e.is_constant():
                entry = (j + 1, k + 1, e.constant_term())
                break
        if entry:
            break
    report["adjoint_nonvanishing"] = entry is not None
    if entry is None:
        nonzero = next((e for row in A for e in row if e.terms), Poly.zero(tab))
        report["failure"] = {"condition": "adjoint_nonvanishing", "polynomial": str(nonzero)}
        return report
    cert["constant_adjoint_entry"] = {"row": entry[0], "col": entry[1], "value": format_rat(entry[2])}
    jt = jordan_type(A, seed=seed)
    report["jordan_type"] = jt.partition
    cert["jordan_sampling"] = jt.to_json()
    report["passed"] = True
    return report
