from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from crtool.jet import (FamilyTag, Jet, JetError, add, compose_affine, dilation_weights, family_jet, is_normalized,
                        jet_from_spec, mul, normalize, recenter, scale, strip_low)

from oracles import series_coeffs

X = sp.Symbol("x")
CLOSED_FORMS = {
    "TypeII": sp.exp(X) - X - 1,
    "TypeIII": sp.log(X + 1) - X,
    "TypeIV": (X + 1) * sp.log(X + 1) - X,
    "TypeV": 2 * (X + 1) ** 2 * sp.log(X + 1) - (X + 1) ** 2 + 1,
    "TypeVI": 6 * (X + 1) ** 3 * sp.log(X + 1) - 2 * (X + 1) ** 3 + 2,
}


def test_type_ii_order_5():
    assert family_jet(FamilyTag("TypeII"), 5).coeffs == (0, 0, F(1, 2), F(1, 6), F(1, 24), F(1, 120))


def test_type_iii_order_4():
    assert family_jet(FamilyTag("TypeIII"), 4).coeffs == (0, 0, F(-1, 2), F(1, 3), F(-1, 4))


def test_type_i_six():
    assert family_jet(FamilyTag("TypeI", a=6), 4).coeffs == (0, 0, 15, 20, 15)


@pytest.mark.parametrize("name", sorted(CLOSED_FORMS))
def test_family_matches_series(name):
    assert list(family_jet(FamilyTag(name), 10).coeffs) == series_coeffs(CLOSED_FORMS[name], X, 10)


@pytest.mark.parametrize("a", [F(5, 2), F(-1), F(7), F(1, 3), F(-7, 4)])
def test_type_i_matches_series(a):
    expr = (X + 1) ** sp.Rational(a.numerator, a.denominator) - sp.Rational(a.numerator, a.denominator) * X - 1
    assert list(family_jet(FamilyTag("TypeI", a=a), 9).coeffs) == series_coeffs(expr, X, 9)


@pytest.mark.parametrize("tag", [FamilyTag("TypeII"), FamilyTag("TypeVI"), FamilyTag("TypeI", a=F(3, 2)),
                                 FamilyTag("Monomial", m=5, a=2), FamilyTag("Zero")])
def test_family_prefix_property(tag):
    lo, hi = family_jet(tag, 6), family_jet(tag, 11)
    assert hi.coeffs[:7] == lo.coeffs


def test_family_needs_order_4():
    with pytest.raises(JetError):
        family_jet(FamilyTag("TypeII"), 3)


def test_family_tag_validation():
    with pytest.raises(JetError):
        FamilyTag("Monomial", m=3, a=1)
    with pytest.raises(JetError):
        FamilyTag("TypeVII")
    assert FamilyTag("TypeI", a=2).degenerate and not FamilyTag("TypeI", a=4).degenerate


def test_tag_json_roundtrip():
    for tag in (FamilyTag("TypeI", a=F(-3, 2)), FamilyTag("Monomial", m=6, a=F(1, 5)), FamilyTag("TypeV")):
        assert FamilyTag.from_json(tag.to_json()) == tag


# calculus -------------------------------------------------------------------

def test_derivative_of_quartic():
    d = Jet.monomial(4).derivative()
    assert d.order == 3 and d.coeffs == (0, 0, 0, 4)


def test_compose_affine_scale():
    assert compose_affine(Jet.monomial(4), 2).coeffs == (0, 0, 0, 0, 16)


def test_product_truncates():
    a = Jet([0, 0, 1], 4)
    b = Jet([0, 0, 0, 1], 4)
    assert mul(a, b).is_zero() and mul(a, b).order == 4


def test_shift_needs_exact():
    with pytest.raises(JetError):
        compose_affine(family_jet(FamilyTag("TypeII"), 6), 1, 1)
    with pytest.raises(JetError):
        recenter(family_jet(FamilyTag("TypeII"), 6), F(1, 2))


def test_value_at_zero():
    f = family_jet(FamilyTag("TypeII"), 6)
    assert all(f.value_at_zero(k) == 1 for k in range(2, 7))


def test_recenter_examples():
    assert recenter(Jet.monomial(4), 1).coeffs == (0, -4, 6, -4, 1)
    f = Jet([3, 1, 2, 0, 5], 4)
    assert recenter(f, 0).coeffs == (0, 1, 2, 0, 5)
    assert recenter(Jet.monomial(2, order=4), -1).coeffs == (0, 2, 1, 0, 0)


small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@given(st.lists(small, min_size=5, max_size=8), small)
def test_recenter_roundtrip(coeffs, a):
    f = Jet(coeffs, exact=True)
    back = recenter(recenter(f, a), -a)
    assert back.coeffs[1:] == f.coeffs[1:]
    assert back.coeffs[0] == 0


@given(st.lists(small, min_size=5, max_size=8), st.lists(small, min_size=5, max_size=8))
def test_add_mul_match_sympy(a, b):
    fa, fb = Jet(a), Jet(b)
    order = min(fa.order, fb.order)
    pa = sum(sp.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(a))
    pb = sum(sp.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(b))
    prod = sp.Poly(sp.expand(pa * pb), X)
    want = [F(str(prod.coeff_monomial(X ** k))) for k in range(order + 1)]
    assert list(mul(fa, fb).coeffs) == want
    assert list(add(fa, fb).coeffs) == [x + y for x, y in zip(fa.coeffs[:order + 1], fb.coeffs[:order + 1])]


# normalization --------------------------------------------------------------

def test_normalize_all_ones():
    g, rec = normalize(Jet([1, 1, 1, 1, 1], 4))
    assert g.coeffs == (0, 0, 0, 0, F(1, 24))
    assert rec.removed == (1, 1, 1, 1) and rec.dilation == 24


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_degenerate_type_i_normalizes_to_zero(a):
    g, _ = normalize(family_jet(FamilyTag("TypeI", a=a), 8))
    assert g.is_zero()


def test_normalize_zero_is_identity():
    g, rec = normalize(Jet.zero(6))
    assert g.is_zero() and rec.identity


def test_negative_quartic_sign_recorded():
    g, rec = normalize(Jet.monomial(4, -2))
    assert rec.sign == -1 and g[4] == F(1, 24)


@given(st.lists(small, min_size=5, max_size=9))
def test_normalize_idempotent(coeffs):
    g, _ = normalize(Jet(coeffs))
    assert is_normalized(g)
    assert g[4] in (0, F(1, 24))
    h, rec = normalize(g)
    assert h == g


def test_dilation_weights_make_quadric_weight_five():
    for n in range(3, 9):
        w = dilation_weights(n)
        for j in range(1, n):
            for k in range(1, n):
                if j + k <= n:
                    assert w[f"x{j}"] + w[f"x{k}"] + (n - j - k) * w["s"] == 5
        assert w["x1"] == 1


def test_strip_low():
    assert strip_low(Jet([1, 2, 3, 4, 5, 6])).coeffs == (0, 0, 0, 0, 5, 6)


def test_jet_serialization():
    f = family_jet(FamilyTag("TypeIV"), 7)
    assert Jet.from_json(f.to_json()) == f
    assert jet_from_spec({"family": {"name": "TypeIV"}, "order": 7}) == f


def test_dilation_scales_back():
    f = Jet([0, 0, 0, 0, 3, 1, 2])
    g, rec = normalize(f)
    lam = rec.dilation
    assert scale(compose_affine(g, 1 / lam), lam ** 5) == f
