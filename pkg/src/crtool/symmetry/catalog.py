"""The named symmetry fields of the hypersurface models."""
from __future__ import annotations

from fractions import Fraction

from ..jet import FamilyTag
from ..ring import I, Poly, VarTable, as_rat, format_rat
from .fields import FieldError, HoloField

CATALOG = ("Y", "Yp", "X", "Xp", "V2n", "U0", "V0", "U0m", "Xhat", "Vf", "C5")


def _vars(n):
    tab = VarTable.chart(n)
    z = {j: Poly.var(tab, f"z{j}") for j in range(1, n)}
    return tab, Poly.var(tab, "w"), z, Poly.var(tab, "zeta")


def _need(params, key):
    if key not in params or params[key] is None:
        raise FieldError(f"missing parameter {key!r}")
    return params[key]


def _index(params, lo, hi):
    j = _need(params, "j")
    if not isinstance(j, int) or not lo <= j <= hi:
        raise FieldError(f"index j={j!r} outside {lo}..{hi}")
    return j


def _diag(n, tab, w, z, zeta, zcoef, zetacoef, wcoef):
    comps = {f"z{j}": z[j].scale(zcoef(j)) for j in range(1, n)}
    comps["zeta"] = zeta.scale(zetacoef)
    comps["w"] = w.scale(wcoef)
    return comps


def _merge(*dicts):
    out = {}
    for d in dicts:
        for k, p in d.items():
            out[k] = out[k] + p if k in out else p
    return out


def _xminus1_part(n, tab, z, zeta):
    """The shared d/dz1 - zeta d/dz2 piece of the extra fields."""
    one = Poly.const(tab, 1)
    return {"z1": one, "z2": -zeta} if n > 2 else {"z1": one}


def catalog_field(name, n, **params):
    if n < 3:
        raise FieldError("fields are defined for n >= 3")
    tab, w, z, zeta = _vars(n)
    one = Poly.const(tab, 1)
    if name == "Y":
        j = _index(params, 1, n)
        target = "w" if j == n else f"z{j}"
        return HoloField(n, {target: one.scale(I)})
    if name == "Yp":
        return HoloField(n, {"zeta": one.scale(I)})
    if name == "X":
        j = _index(params, 1, n - 1)
        if j == n - 1:
            return HoloField(n, {f"z{n - 1}": one, "w": z[1].scale(2)})
        return HoloField(n, _merge({f"z{j}": one, f"z{j + 1}": -zeta}, {"w": z[n - j].scale(2)}))
    if name == "Xp":
        comps = {"zeta": one.scale(2)}
        for j in range(2, n):
            comps[f"z{j}"] = z[j - 1].scale(2 * j - 2 - n)
        return HoloField(n, comps)
    if name == "V2n":
        return HoloField(n, _merge({"w": (z[1] ** 2).scale(I)}, {f"z{n - 1}": z[1].scale(I)}))
    if name == "U0":
        return HoloField(n, _diag(n, tab, w, z, zeta, lambda j: j, 1, n))
    if name == "V0":
        return HoloField(n, _diag(n, tab, w, z, zeta, lambda j: 1, 0, 2))
    if name == "U0m":
        m = as_rat(_need(params, "m"))
        d = n - 2
        return HoloField(n, _diag(n, tab, w, z, zeta,
                                  lambda j: Fraction(n - m, d) + Fraction(m - 2, d) * j,
                                  Fraction(m - 2, d), m))
    if name == "Xhat":
        a = as_rat(_need(params, "a"))
        comps = _merge(_xminus1_part(n, tab, z, zeta),
                       {"w": z[n - 1].scale(2) - (z[1] ** 3).scale(2 * a)},
                       {f"z{n - 1}": (z[1] ** 2).scale(-3 * a)})
        return HoloField(n, comps)
    if name == "Vf":
        return _family_field(n, _family_param(params), tab, w, z, zeta, bool(params.get("flip_quadratic", False)))
    if name == "C5":
        if n != 4:
            raise FieldError("the exceptional field lives in C^5 (n = 4)")
        return HoloField(n, {"z2": (z[1] ** 2).scale(I), "zeta": z[1].scale(-2 * I)})
    raise FieldError(f"unknown field {name!r}")


def _family_param(params):
    fam = _need(params, "family")
    if isinstance(fam, FamilyTag):
        return fam
    if isinstance(fam, str):
        if fam == "TypeI":
            return FamilyTag("TypeI", a=as_rat(_need(params, "a")))
        return FamilyTag(fam)
    return FamilyTag.from_json(fam)


def _family_field(n, tag, tab, w, z, zeta, flip_quadratic=False):
    d = n - 2
    base = _xminus1_part(n, tab, z, zeta)
    name = tag.name
    if name == "TypeI":
        a = tag.a
        if a in (0, 1, 2, 3):
            raise FieldError("TypeI(a) with a in {0,1,2,3} is degenerate")
        extra = _diag(n, tab, w, z, zeta, lambda j: Fraction(n - a, d) + Fraction(a - 2, d) * j, Fraction(a - 2, d), 0)
        extra["w"] = w.scale(a) + z[1].scale(a * (a - 1)) + z[n - 1].scale(2)
    elif name == "TypeII":
        extra = _diag(n, tab, w, z, zeta, lambda j: Fraction(j - 1, d), Fraction(1, d), 0)
        extra["w"] = w + z[1] + z[n - 1].scale(2)
    elif name == "TypeIII":
        extra = _diag(n, tab, w, z, zeta, lambda j: Fraction(n - 2 * j, d), Fraction(-2, d), 0)
        extra["w"] = z[n - 1].scale(2) - z[1]
    elif name == "TypeIV":
        extra = _diag(n, tab, w, z, zeta, lambda j: Fraction(n - j - 1, d), Fraction(-1, d), 0)
        extra["w"] = w + z[1] + z[n - 1].scale(2)
    elif name == "TypeV":
        extra = {f"z{j}": z[j] for j in range(1, n - 1)}
        extra[f"z{n - 1}"] = z[n - 1] - z[1]
        extra["w"] = w.scale(2) + z[1].scale(4) + z[n - 1].scale(2)
    elif name == "TypeVI":
        extra = _diag(n, tab, w, z, zeta, lambda j: Fraction(n - 3 + j, d), Fraction(1, d), 0)
        extra["w"] = w.scale(3) + z[1].scale(18) - (z[1] ** 3).scale(3) + z[n - 1].scale(2)
        # tangency forces -(9 z1 + 9/2 z1^2) d/dz_{n-1}; flip_quadratic=True keeps the
        # opposite sign on z1^2, which fails at degree 3
        quad = Fraction(9, 2) if flip_quadratic else Fraction(-9, 2)
        extra[f"z{n - 1}"] = extra[f"z{n - 1}"] - z[1].scale(9) + (z[1] ** 2).scale(quad)
    else:
        raise FieldError(f"no extra field for family {name}")
    return HoloField(n, _merge(base, extra))


def field_label(name, n=None, **params):
    if name == "Y":
        j = params["j"]
        return "Y_{-n}" if n is not None and j == n else f"Y_{{-{j}}}"
    if name == "X":
        j = params["j"]
        return "X_{1-n}" if n is not None and j == n - 1 else f"X_{{-{j}}}"
    if name == "U0m":
        return f"U_0^{{{format_rat(as_rat(params['m'])).removesuffix('/1')}}}"
    if name == "Vf":
        return f"V_f[{_family_param(params)}]"
    if name == "Xhat":
        return "Xhat_{-1}"
    return {"Yp": "Y'_{-1}", "Xp": "X'_{-1}", "V2n": "V_{2-n}", "U0": "U_0", "V0": "V_0", "C5": "C5"}[name]


def field_from_spec(n, spec):
    """Build a catalog field from ``{"name": .., <params>}``."""
    params = {k: v for k, v in spec.items() if k != "name"}
    return catalog_field(spec["name"], n, **params), field_label(spec["name"], n, **params)


# named bases ---------------------------------------------------------------

def basis_f(n):
    """The subalgebra tangent to every model u = P + f(x1), with its labels."""
    out = [("Y", {"j": n})] + [("Y", {"j": j}) for j in range(1, n)] + [("Yp", {})]
    out += [("X", {"j": j}) for j in range(n - 1, 1, -1)] + [("Xp", {}), ("V2n", {})]
    return [(field_label(nm, n, **p), catalog_field(nm, n, **p)) for nm, p in out]


def basis_g(n):
    """Symmetries of the flat model: basis_f plus X_{-1}, U_0, V_0."""
    extra = [("X", {"j": 1}), ("U0", {}), ("V0", {})]
    return basis_f(n) + [(field_label(nm, n, **p), catalog_field(nm, n, **p)) for nm, p in extra]


def basis_m(n):
    """e_0, .., e_{2n} of the graded algebra m (with e_0 = 4i Y_{-n} = -4 d/dw)."""
    X = {j: catalog_field("X", n, j=j) for j in range(1, n)}
    Y = {j: catalog_field("Y", n, j=j) for j in range(1, n + 1)}
    Xp, Yp = catalog_field("Xp", n), catalog_field("Yp", n)
    out = [("e_0", Y[n].scale(4 * I))]
    out += [(f"e_{j}", X[j] + Y[j].scale(I)) for j in range(1, n)]
    out += [(f"e_{n - 1 + j}", X[j] - Y[j].scale(I)) for j in range(1, n)]
    out.append((f"e_{2 * n - 1}", -Xp - Yp.scale(2 * I)))
    out.append((f"e_{2 * n}", -Xp + Yp.scale(2 * I)))
    return out


BASES = {"g": basis_g, "f": basis_f, "m": basis_m}
