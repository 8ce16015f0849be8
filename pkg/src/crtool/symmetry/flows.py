"""Flows of the model symmetries, normalizing maps and transport of hypersurfaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..jet import Jet
from ..ring import GaussRat, Poly, VarTable, as_rat, key_degree
from .catalog import catalog_field
from .fields import FieldError, HoloField, HoloMap

FLOW_NAMES = ("X", "Y", "Yp", "Xp", "U0scale", "V0scale")


class TransportError(ValueError):
    pass


def _chart(n):
    tab = VarTable.chart(n)
    z = {j: Poly.var(tab, f"z{j}") for j in range(1, n)}
    return tab, Poly.var(tab, "w"), z, Poly.var(tab, "zeta")


def _scalar(t):
    return t if isinstance(t, GaussRat) else as_rat(t)


def _xp_betas(n, t):
    """The z_j increments of the X'_{-1} flow, built from the recursion in t.

    beta_2 = (2-n) z1 t and d/dt beta_j = (2j-2-n)(z_{j-1} + beta_{j-1}),
    beta_j(0) = 0.  Each beta is kept as a list of Poly coefficients of t^k.
    """
    tab, _, z, _ = _chart(n)
    betas = {}
    prev = None
    for j in range(2, n):
        c = Fraction(2 * j - 2 - n)
        src = [z[j - 1]] if prev is None else [z[j - 1] + prev[0]] + prev[1:]
        # integrate c * sum_k src[k] t^k
        cur = [Poly.zero(tab)] + [p.scale(c / (k + 1)) for k, p in enumerate(src)]
        betas[j] = cur
        prev = cur
    out = {}
    for j, coeffs in betas.items():
        acc = Poly.zero(tab)
        tk = Fraction(1)
        for p in coeffs:
            if p.terms:
                acc = acc + p.scale(tk)
            tk = tk * t
        out[j] = acc
    return out


def flow_map(name, t, n, **params) -> HoloMap:
    """Time-t flow of the real part of a catalog field, in closed form.

    ``U0scale`` and ``V0scale`` take the multiplicative factor t = e^s of the
    flow at time s, so they stay rational.
    """
    tab, w, z, zeta = _chart(n)
    t = _scalar(t)
    if name == "Y":
        j = params.get("j")
        if not isinstance(j, int) or not 1 <= j <= n:
            raise FieldError(f"Y flow needs 1 <= j <= n, got {j!r}")
        target = "w" if j == n else f"z{j}"
        return HoloMap(n, {target: Poly.var(tab, target) + GaussRat(0, 1) * t})
    if name == "Yp":
        return HoloMap(n, {"zeta": zeta + GaussRat(0, 1) * t})
    if name == "X":
        j = params.get("j")
        if not isinstance(j, int) or not 1 <= j <= n - 1:
            raise FieldError(f"X flow needs 1 <= j <= n-1, got {j!r}")
        if j == n - 1:
            return HoloMap(n, {f"z{j}": z[j] + t, "w": w + z[1].scale(2 * t)})
        alpha = Poly.zero(tab)
        if n == 2 * j:
            alpha = Poly.const(tab, t * t)
        elif n == 2 * j + 1:
            alpha = zeta.scale(-t * t)
        return HoloMap(n, {f"z{j}": z[j] + t, f"z{j + 1}": z[j + 1] - zeta.scale(t),
                           "w": w + z[n - j].scale(2 * t) + alpha})
    if name == "Xp":
        comps = {"zeta": zeta + 2 * t}
        for j, b in _xp_betas(n, t).items():
            comps[f"z{j}"] = z[j] + b
        return HoloMap(n, comps)
    if name == "U0scale":
        if t == 0:
            raise FieldError("scale factor must be nonzero")
        comps = {f"z{j}": z[j].scale(t ** j) for j in range(1, n)}
        comps["zeta"] = zeta.scale(t)
        comps["w"] = w.scale(t ** n)
        return HoloMap(n, comps)
    if name == "V0scale":
        if t == 0:
            raise FieldError("scale factor must be nonzero")
        comps = {f"z{j}": z[j].scale(t) for j in range(1, n)}
        comps["w"] = w.scale(t * t)
        return HoloMap(n, comps)
    raise FieldError(f"no closed-form flow for {name!r}")


def lie_series_flow(X: HoloField, t, max_terms=64) -> HoloMap:
    """Flow as sum_k t^k/k! X^k(coordinate); requires the series to terminate."""
    t = _scalar(t)
    comps = {}
    for a in X.coords():
        term = Poly.var(X.table, a)
        acc = term
        coeff = Fraction(1)
        for k in range(1, max_terms + 1):
            term = X.apply(term)
            if not term.terms:
                break
            coeff = coeff * t / k
            acc = acc + term.scale(coeff)
        else:
            raise FieldError("Lie series did not terminate")
        comps[a] = acc
    return HoloMap(X.n, comps)


# named maps ---------------------------------------------------------------

def scaling_map(n, lam, mu) -> HoloMap:
    """z_j -> mu lam^j z_j, zeta -> lam zeta, w -> mu^2 lam^n w.

    Carries M_{f} onto M_{c1 f(c2 x)} with c1 = mu^2 lam^n, c2 = 1/(mu lam).
    """
    return flow_map("U0scale", lam, n)(flow_map("V0scale", mu, n))


def _rational_root(x: Fraction, k: int):
    """Rational r with r**k == x, or None."""
    x = as_rat(x)
    if x == 0:
        return Fraction(0)
    if x < 0 and k % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    num = _int_root(abs(x.numerator), k)
    den = _int_root(x.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def _int_root(m, k):
    if m in (0, 1):
        return m
    r = round(m ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand > 0 and cand ** k == m:
            return cand
    # fall back to bisection for large values
    lo, hi = 1, m
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** k
        if p == m:
            return mid
        if p < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def scaling_for(n, c1, c2):
    """(lam, mu) with mu^2 lam^n = c1, mu lam = 1/c2, if rational ones exist."""
    c1, c2 = as_rat(c1), as_rat(c2)
    if not c1 or not c2:
        raise FieldError("c1 and c2 must be nonzero")
    L = c1 * c2 * c2
    lam = _rational_root(L, n - 2)
    if lam is None:
        return None
    return lam, 1 / (c2 * lam)


def remove_map(n, coeffs):
    """Polynomial change of coordinates removing a0..a3 from u = P + f(x1).

    Returns (map, inverse).  The map sends M_f onto M_g where g is f with its
    constant, linear, quadratic and cubic coefficients deleted.
    """
    tab, w, z, zeta = _chart(n)
    a0, a1, a2, a3 = (as_rat(c) for c in coeffs[:4])
    dw = Poly.const(tab, -a0) + (z[1] ** 3).scale(a3 / 2)
    dz = Poly.const(tab, a1 / 2) + z[1].scale(a2 / 2) + (z[1] ** 2).scale(3 * a3 / 4)
    last = f"z{n - 1}"
    fwd = HoloMap(n, {"w": w + dw, last: z[n - 1] + dz})
    inv = HoloMap(n, {"w": w - dw, last: z[n - 1] - dz})
    return fwd, inv


def translation(n, **shift):
    tab = VarTable.chart(n)
    return HoloMap(n, {a: Poly.var(tab, a) + _scalar(c) for a, c in shift.items()})


@dataclass
class Recentering:
    flows: HoloMap
    psi: HoloMap
    steps: list
    image: dict
    x1star: Fraction

    def to_json(self):
        return {"steps": [[nm, str(t)] for nm, t in self.steps], "x1star": str(self.x1star)}


def recentering_map(n, point) -> Recentering:
    """Composite of model-symmetry flows carrying ``point`` to (w*, 0, .., 0),
    followed by the w-translation to the origin.

    The z1 coordinate is only shifted, so a hypersurface u = P + f(x1) goes to
    u = P + f(x - x1*) - f(-x1*) with x1* = -Re z1 of the point.
    """
    coords = ["w"] + [f"z{j}" for j in range(1, n)] + ["zeta"]
    cur = {a: _scalar(point.get(a, 0)) for a in coords}
    psi = HoloMap.identity(n)
    steps = []

    def push(nm, t, m):
        nonlocal psi, cur
        if t == 0:
            return
        steps.append((nm, t))
        psi = m(psi)
        cur = m.evaluate(cur)

    def re(c):
        return c.re if isinstance(c, GaussRat) else Fraction(c)

    def im(c):
        return c.im if isinstance(c, GaussRat) else Fraction(0)

    for j in range(1, n):
        t = -im(cur[f"z{j}"])
        push(f"Y_{{-{j}}}", t, flow_map("Y", t, n, j=j))
    t = -im(cur["zeta"])
    push("Y'_{-1}", t, flow_map("Yp", t, n))
    t = -re(cur["zeta"]) / 2
    push("X'_{-1}", t, flow_map("Xp", t, n))
    t = -re(cur[f"z{n - 1}"])
    push("X_{1-n}", t, flow_map("X", t, n, j=n - 1))
    for j in range(n - 2, 0, -1):
        t = -re(cur[f"z{j}"])
        push(f"X_{{-{j}}}", t, flow_map("X", t, n, j=j))
    t = -im(cur["w"])
    push("Y_{-n}", t, flow_map("Y", t, n, j=n))
    x1star = -re(_scalar(point.get("z1", 0)))
    flows = psi
    t = -cur["w"]
    push("translate w", t, translation(n, w=t))
    return Recentering(flows, psi, steps, cur, x1star)


def point_on_model(M, **real):
    """Point of M with given real coordinates (x_j, y_j, s, t, v); u solves u = Phi."""
    vals = {k: as_rat(v) for k, v in real.items()}
    phi = M.defining_polynomial
    u = phi.evaluate({k: vals.get(k, 0) for k in phi.variables()})
    pt = {"w": GaussRat.make(as_rat(u), vals.get("v", 0)),
          "zeta": GaussRat.make(vals.get("s", 0), vals.get("t", 0))}
    for j in range(1, M.n):
        pt[f"z{j}"] = GaussRat.make(vals.get(f"x{j}", 0), vals.get(f"y{j}", 0))
    return pt


# transport ----------------------------------------------------------------

@dataclass
class TransportResult:
    ok: bool
    factor: object
    degree: int | None
    witness: list = field(default_factory=list)

    def to_json(self):
        return {"ok": self.ok, "factor": None if self.factor is None else str(self.factor),
                "degree": self.degree, "witness": self.witness}


def rho(M) -> Poly:
    tab = M.table
    return Poly.var(tab, "u") - M.defining_polynomial


def _real_components(psi: HoloMap):
    tab = psi.table
    bind = {"w": Poly.var(tab, "u") + Poly.var(tab, "v").scale(GaussRat(0, 1)),
            "zeta": Poly.var(tab, "s") + Poly.var(tab, "t").scale(GaussRat(0, 1))}
    for j in range(1, psi.n):
        bind[f"z{j}"] = Poly.var(tab, f"x{j}") + Poly.var(tab, f"y{j}").scale(GaussRat(0, 1))
    return {a: p.subs(bind).real_coeffs() for a, p in psi.comps.items()}


def pullback_rho(psi: HoloMap, M) -> Poly:
    """rho_M o psi as a real polynomial in u, v, x, y, s, t."""
    if psi.n != M.n:
        raise TransportError("map and model live in different dimensions")
    re = _real_components(psi)
    if getattr(M, "blocks", None) is not None and not M.exact:
        for block, off in zip(M.blocks, M.offsets):
            if not block.jet.exact and re[f"z{off + 1}"].constant_term():
                raise TransportError("map moves the base point of a non-exact jet")
    bind = {f"x{j}": re[f"z{j}"] for j in range(1, M.n)}
    bind["s"] = re["zeta"]
    return re["w"] - M.defining_polynomial.subs(bind)


def _jet_limit(*models):
    orders = [m.jet_order for m in models if getattr(m, "blocks", None) is not None and m.jet_order is not None]
    return min(orders) if orders else None


def transport_check(psi: HoloMap, src, dst, D=None) -> TransportResult:
    """Is rho_dst o psi = lam rho_src (to degree D for truncated jets)?"""
    pulled = pullback_rho(psi, dst)
    base = rho(src)
    tab = src.table
    ukey = Poly.var(tab, "u").leading()[0]
    lam = pulled.terms.get(ukey)
    limit = _jet_limit(src, dst)
    if limit is not None:
        if D is None:
            D = limit
        if D > limit:
            raise TransportError(f"degree {D} exceeds the jet-verified range {limit}")
    if lam is None:
        return TransportResult(False, None, D, [{"monomial": "u", "coeff": "0"}])
    resid = pulled - base.scale(lam)
    if D is not None:
        resid = resid.truncate(D)
    if not resid.terms:
        return TransportResult(True, lam, D)
    low = min(key_degree(k) for k in resid.terms)
    wit = [{"monomial": resid.monomial_str(k) or "1", "coeff": str(c)}
           for k, c in resid.homogeneous_part(low).sorted_terms()[:4]]
    return TransportResult(False, lam, D, wit)


def model_invariant(n) -> Poly:
    """F = Re w - P of the flat model, in real coordinates."""
    from ..hypersurface import HSModel

    return rho(HSModel.single(n, Jet.zero()))


def preserves_model(psi: HoloMap) -> bool:
    """F o psi == F exactly."""
    from ..hypersurface import HSModel

    M0 = HSModel.single(psi.n, Jet.zero())
    return pullback_rho(psi, M0) == rho(M0)


def pushforward_scaling(X: HoloField, c1, c2) -> HoloField:
    """Push X along the scaling M_g -> M_{c1 g(c2 x)} without extracting roots.

    A component of bi-weight (p, q) picks up lam^-p mu^-q = lam^(q-p) m^-q with
    m = mu lam = 1/c2 and lam^(n-2) = c1 c2^2, so q - p must be a multiple of n - 2.
    """
    from .algebra import weight_components

    c1, c2 = as_rat(c1), as_rat(c2)
    n = X.n
    L = c1 * c2 * c2
    m = 1 / c2
    out = HoloField(n)
    for (p, q), piece in weight_components(X).items():
        b = Fraction(q - p) / (n - 2)
        if b.denominator != 1:
            raise FieldError(f"component of weight ({p}, {q}) needs a root of {L}")
        out = out + piece.scale(L ** int(b) * m ** (-q))
    return out
