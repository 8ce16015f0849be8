"""Infinitesimal symmetries of a single-block model u = P + f(x1) at the origin."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..jet import family_jet, is_normalized, strip_low
from .catalog import basis_f, basis_g, catalog_field, field_label
from .fields import FieldError, pushforward
from .flows import pushforward_scaling, remove_map
from .tangency import tangency_check


@dataclass
class HolBasis:
    labels: list
    fields: list
    case: str
    family: object = None
    notes: list = field(default_factory=list)

    @property
    def dimension(self):
        return len(self.fields)

    def certify(self, M, D=None):
        """Tangency verdict for every field; ``D`` defaults to the guaranteed range."""
        return {lab: tangency_check(X, M, D) for lab, X in zip(self.labels, self.fields)}

    def to_json(self):
        return {"case": self.case, "dimension": self.dimension, "family": None if self.family is None else str(self.family),
                "fields": [{"label": lab, "field": X.to_json()} for lab, X in zip(self.labels, self.fields)],
                "notes": self.notes}


def _single_jet(M):
    blocks = getattr(M, "blocks", None)
    if blocks is None or len(blocks) != 1:
        raise FieldError("hol_basis handles single-block models only")
    if blocks[0].sign != 1:
        raise FieldError("hol_basis expects the block sign +1")
    if M.n < 5:
        raise FieldError("symmetry algebras are classified here for n >= 5 only")
    f = blocks[0].jet
    if not is_normalized(f):
        raise FieldError("normalize the jet first (a0 = a1 = a2 = a3 = 0)")
    return f


def family_field(n, tag, f):
    """V_T carried to M_f, where f = c1 g(c2 x) and g is f_T without its cubic part."""
    from ..classify import ClassifyError, equivalent_at_origin

    order = f.order if not f.exact else max(f.order, 12)
    fT = family_jet(tag, order)
    g = strip_low(fT)
    res = equivalent_at_origin(f if not f.exact else f.with_order(order), g)
    if not res.equivalent or res.witness is None or not res.witness.rational:
        raise ClassifyError(f"no rational rescaling to the {tag} representative")
    C1, C2 = res.witness.c1, res.witness.c2
    V = catalog_field("Vf", n, family=tag)
    fwd, inv = remove_map(n, fT.coeffs)
    V = pushforward(V, fwd, inv)
    return pushforward_scaling(V, C1 / C2 ** 4, C2)


def hol_basis(M) -> HolBasis:
    f = _single_jet(M)
    n = M.n
    sup = f.support()
    base = basis_f(n)
    labels = [lab for lab, _ in base]
    fields = [X for _, X in base]
    if not sup:
        g = basis_g(n)
        return HolBasis([lab for lab, _ in g], [X for _, X in g], "flat")
    if len(sup) == 1:
        m = sup[0]
        if m == 4:
            a = f[4]
            extra = [(field_label("U0m", n, m=4), catalog_field("U0m", n, m=4)),
                     (field_label("Xhat", n, a=a), catalog_field("Xhat", n, a=a))]
            case = "quartic monomial"
        else:
            extra = [(field_label("U0m", n, m=m), catalog_field("U0m", n, m=m))]
            case = "monomial"
        return HolBasis(labels + [lab for lab, _ in extra], fields + [X for _, X in extra], case)
    from ..classify import homogeneity_test

    h = homogeneity_test(f)
    if h.homogeneous and f[4] != 0:
        tag = h.family
        X = family_field(n, tag, f)
        return HolBasis(labels + [f"V_f[{tag}]"], fields + [X], "homogeneous family", tag)
    return HolBasis(labels, fields, "generic")
