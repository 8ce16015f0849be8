"""Tangency of Re X to u = Phi(x, s).

On the hypersurface w = Phi + i v the real part of X is tangent exactly when

    Re[h - sum_j Phi_{x_j} f_j - Phi_s g] = 0,

a polynomial identity in (x, y, s, t, v).  For jets of finite order the
identity is only meaningful up to a degree that depends on where the missing
Taylor coefficients can enter; see :func:`guaranteed_degree`.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..ring import GaussRat, Poly, key_degree, real_coords
from .fields import HoloField

EXACT, VERIFIED, FAILS = "exact", "verified_to_degree", "fails"


class TangencyRangeError(ValueError):
    pass


@dataclass
class TangencyVerdict:
    status: str
    degree: int | None = None
    witness: list | None = None
    residual: Poly | None = None

    @property
    def ok(self):
        return self.status != FAILS

    def to_json(self):
        out = {"status": self.status}
        if self.degree is not None:
            out["degree"] = self.degree
        if self.witness:
            out["witness"] = self.witness
        return out

    def __str__(self):
        if self.status == VERIFIED:
            return f"verified_to_degree({self.degree})"
        if self.status == FAILS:
            return f"fails({', '.join(w['monomial'] for w in self.witness or [])})"
        return EXACT


def realified_substitution(M):
    """Bindings w -> Phi + i v, z_j -> x_j + i y_j, zeta -> s + i t."""
    tab = M.table
    i = GaussRat(0, 1)
    b = {"w": M.defining_polynomial + Poly.var(tab, "v").scale(i),
         "zeta": Poly.var(tab, "s") + Poly.var(tab, "t").scale(i)}
    for j in range(1, M.n):
        b[f"z{j}"] = Poly.var(tab, f"x{j}") + Poly.var(tab, f"y{j}").scale(i)
    return b


def tangency_residual(X: HoloField, M) -> Poly:
    if X.n != M.n:
        raise ValueError(f"field lives in n={X.n}, model in n={M.n}")
    phi = M.defining_polynomial
    bind = realified_substitution(M)
    coords = real_coords(M.n)
    names = [f"z{j}" for j in range(1, M.n)] + ["zeta"]
    out = X.h.subs(bind).real_coeffs()
    for name, x in zip(names, coords):
        c = X[name]
        if c.terms:
            out = out - phi.diff(x) * c.subs(bind).real_coeffs()
    return out


def guaranteed_degree(X: HoloField, M):
    """Largest D for which truncating the jets cannot change residual terms of degree <= D.

    A missing coefficient a_k (k > J) of the jet attached to x_m first shows up
    in Phi_{x_m} at degree J, multiplied by Re f_m; through h it enters at
    degree J + 1 or higher.  None means every jet is exact.
    """
    if getattr(M, "blocks", None) is None or M.exact:
        return None
    best = None
    for block, off in zip(M.blocks, M.offsets):
        if block.jet.exact:
            continue
        J = block.jet.order
        fm = X[f"z{off + 1}"]
        bound = J if not fm.terms else J - 1 + fm.min_degree()
        best = bound if best is None else min(best, bound)
    return best


def _witness(residual: Poly, limit=4):
    low = min(key_degree(k) for k in residual.terms)
    part = residual.homogeneous_part(low)
    out = []
    for key, c in part.sorted_terms()[:limit]:
        out.append({"monomial": residual.monomial_str(key) or "1", "coeff": str(c), "degree": low})
    return out


def tangency_check(X: HoloField, M, D=None) -> TangencyVerdict:
    residual = tangency_residual(X, M)
    limit = guaranteed_degree(X, M)
    if limit is None:
        if residual.terms:
            return TangencyVerdict(FAILS, None, _witness(residual), residual)
        return TangencyVerdict(EXACT)
    if D is None:
        D = limit
    if D > limit:
        raise TangencyRangeError(f"degree {D} exceeds the jet-guaranteed range {limit}")
    truncated = residual.truncate(D)
    if truncated.terms:
        return TangencyVerdict(FAILS, D, _witness(truncated), truncated)
    return TangencyVerdict(VERIFIED, D)
