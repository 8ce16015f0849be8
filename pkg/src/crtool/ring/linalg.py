"""Exact linear algebra over Q, Q(i) and polynomial matrices.

Scalar routines work on lists of lists of Fraction or GaussRat entries.
Polynomial determinants use fraction-free Bareiss elimination, whose
divisions are exact in the polynomial ring.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly


def copy_matrix(M):
    return [list(row) for row in M]


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(r, c, zero=Fraction(0)):
    return [[zero] * c for _ in range(r)]


def matmul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        Ai = A[i]
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                a = Ai[k]
                if isinstance(a, Poly):
                    if not a.terms:
                        continue
                elif not a:
                    continue
                term = a * B[k][j]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = A[i][0] * 0 if rows and inner else Fraction(0)
            row.append(acc)
        out.append(row)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def matpow(A, k):
    n = len(A)
    out = identity(n)
    for _ in range(k):
        out = matmul(out, A)
    return out


def is_zero_matrix(A):
    return all(not x for row in A for x in row)


def rref(M):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    A = copy_matrix(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M):
    """Basis of the right kernel of a scalar matrix."""
    cols = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fcol]
        basis.append(v)
    return basis


def solve_in_span(basis_rows, target):
    """Coefficients c with sum c_i basis_rows[i] == target, or None.

    ``basis_rows`` must be linearly independent.
    """
    k = len(basis_rows)
    aug = [list(col) + [t] for col, t in zip(transpose(basis_rows), target)]
    R, pivots = rref(aug)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for i, pc in enumerate(pivots):
        coeffs[pc] = R[i][k]
    return coeffs


def poly_det(M):
    """Determinant of a square matrix of Poly by Bareiss elimination."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    table = M[0][0].table
    A = copy_matrix(M)
    sign = 1
    prev = Poly.const(table, 1)
    for k in range(n - 1):
        p = _pick_pivot(A, k)
        if p is None:
            return Poly.zero(table)
        if p != k:
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = akk * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num.divexact(prev)
            A[i][k] = Poly.zero(table)
        prev = akk
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


def _pick_pivot(A, k):
    best = None
    for i in range(k, len(A)):
        e = A[i][k]
        if e.terms:
            if e.is_constant():
                return i
            if best is None:
                best = i
    return best


def evaluate_matrix(M, point):
    return [[e.evaluate(point) if isinstance(e, Poly) else e for e in row] for row in M]
