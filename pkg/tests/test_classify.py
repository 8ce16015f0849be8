import random
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from crtool.classify import (C_TABLE, ClassifyError, classify, equivalent_at_origin, equivalent_at_points,
                             hol_dimension, homogeneity_test, ode_residual, recognize_family, type_one_constant,
                             weights4_fit, weights4_regenerate, weights4_residual)
from crtool.jet import FamilyTag, Jet, compose_affine, family_jet, normalize, scale, strip_low

from test_jet import CLOSED_FORMS

X = sp.Symbol("x")
FAMILIES = ["TypeII", "TypeIII", "TypeIV", "TypeV", "TypeVI"]


def norm(tag, order=12):
    return normalize(family_jet(tag, order))[0]


def scaled(f, c1, c2):
    return scale(compose_affine(f, c2), c1)


# ODE constants, independently from sympy ------------------------------------

def ode_constant(expr):
    y = sp.diff(expr, X, 4)
    c = sp.simplify(y * sp.diff(y, X, 2) / sp.diff(y, X) ** 2)
    assert c.free_symbols == set()
    return F(str(c))


@pytest.mark.parametrize("name", FAMILIES)
def test_dispatch_constants_from_closed_forms(name):
    c = ode_constant(CLOSED_FORMS[name])
    assert C_TABLE[c] == name
    assert homogeneity_test(norm(FamilyTag(name))).c == c


@pytest.mark.parametrize("a", [F(6), F(7), F(5, 2), F(-1), F(1, 3), F(5)])
def test_type_one_constant_formula(a):
    s = sp.Rational(a.numerator, a.denominator)
    c = ode_constant((X + 1) ** s - s * X - 1)
    assert type_one_constant(a) == c
    # inverse formula used by the dispatcher
    assert (5 - 4 * c) / (1 - c) == a


# homogeneity ------------------------------------------------------------------

def test_homogeneity_examples():
    r = homogeneity_test(norm(FamilyTag("TypeV")))
    assert r.homogeneous and r.c == F(3, 2)
    assert homogeneity_test(norm(FamilyTag("TypeII"))).c == 1
    assert not homogeneity_test(Jet([0, 0, 0, 0, 1, 0, 1])).homogeneous


def test_homogeneity_requires_normalized():
    with pytest.raises(ClassifyError):
        homogeneity_test(family_jet(FamilyTag("TypeII"), 8))


def test_vanishing_fourth_derivative_at_zero():
    r = homogeneity_test(Jet.monomial(5))
    assert not r.homogeneous


@pytest.mark.parametrize("tag", [FamilyTag(n) for n in FAMILIES] +
                         [FamilyTag("TypeI", a=a) for a in (F(6), F(7), F(5, 2), F(-1), F(5), F(9, 4))])
def test_recognition_roundtrip(tag):
    f = norm(tag)
    h = homogeneity_test(f)
    assert h.homogeneous
    r = recognize_family(f)
    assert r.family == tag
    assert r.witness is not None


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_degenerate_type_one_recognized_as_zero(a):
    f = norm(FamilyTag("TypeI", a=a))
    assert recognize_family(f).family.name == "Zero"


def test_recognition_of_the_zero_and_quartic():
    assert recognize_family(Jet.zero(8)).family.name == "Zero"
    r = recognize_family(Jet.monomial(4, F(1, 24)))
    assert r.family.name == "Monomial" and r.family.m == 4


def test_ode_residual_of_family():
    y = norm(FamilyTag("TypeVI"), 14).derivative(4)
    assert ode_residual(y, 2).is_zero()
    assert not ode_residual(y, F(3, 2)).is_zero()


# equivalence ------------------------------------------------------------------

def test_scaled_quartic_degenerate_witness():
    r = equivalent_at_origin(Jet.monomial(4, order=8), Jet.monomial(4, 3, order=8))
    assert r.equivalent and r.witness.degenerate
    assert (r.witness.c1, r.witness.c2) == (F(1, 3), 1)
    assert r.unconditional


def test_type_one_two_equivalent_to_zero():
    f = family_jet(FamilyTag("TypeI", a=2), 8)
    r = equivalent_at_origin(f, Jet.zero(8))
    assert r.equivalent


def test_type_ii_not_type_iii():
    f, g = family_jet(FamilyTag("TypeII"), 10), family_jet(FamilyTag("TypeIII"), 10)
    r = equivalent_at_origin(f, g)
    assert not r.equivalent and r.witness is None


def test_pairwise_family_inequivalence():
    tags = [FamilyTag(n) for n in FAMILIES] + [FamilyTag("TypeI", a=a) for a in (F(6), F(5, 2), F(-1))]
    jets = [norm(t, 10) for t in tags]
    for i in range(len(jets)):
        for j in range(len(jets)):
            assert equivalent_at_origin(jets[i], jets[j]).equivalent == (i == j)


def test_order_guards():
    with pytest.raises(ClassifyError):
        equivalent_at_origin(family_jet(FamilyTag("TypeII"), 5), family_jet(FamilyTag("TypeII"), 5))
    with pytest.raises(ClassifyError):
        equivalent_at_origin(family_jet(FamilyTag("TypeII"), 8), family_jet(FamilyTag("TypeII"), 9))


def test_non_exact_verdict_is_conditional():
    f = norm(FamilyTag("TypeIV"), 10)
    r = equivalent_at_origin(f, f)
    assert r.verdict() == "to-order-10"


def test_points_examples():
    f = Jet.monomial(4)
    g = Jet([1, -4, 6, -4, 1], exact=True)  # (x - 1)^4
    assert equivalent_at_points(f, 1, g, 2).equivalent
    r = equivalent_at_points(f, 0, f, 0)
    assert r.equivalent and (r.witness.c1, r.witness.c2) == (1, 1)
    assert not equivalent_at_points(Jet.monomial(4, order=8), 0, Jet.monomial(5, order=8), 0).equivalent
    with pytest.raises(ClassifyError):
        equivalent_at_points(family_jet(FamilyTag("TypeII"), 8), 0, f, 0)


nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(lambda q: q != 0)


@given(nonzero, nonzero, st.sampled_from(FAMILIES))
def test_scaling_invariance(c1, c2, name):
    f = norm(FamilyTag(name), 11)
    g = scaled(f, c1, c2)
    r = equivalent_at_origin(g, f)
    assert r.equivalent and r.witness.rational
    # the witness relates fourth derivatives: g'''' = c1 c2^4 f''''(c2 x)
    assert (r.witness.c1, r.witness.c2) == (c1 * c2 ** 4, c2)


def random_polynomial(rng, deg=9):
    return Jet([0, 0, 0, 0] + [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4, deg + 1)], exact=True)


def test_relation_properties():
    rng = random.Random(7)
    for _ in range(15):
        f = random_polynomial(rng)
        if f[4] == 0 or f[5] == 0:
            continue
        a1, a2, b1, b2 = (F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(4))
        g = scaled(f, a1, a2)
        h = scaled(g, b1, b2)
        refl = equivalent_at_origin(f, f)
        assert refl.equivalent and (refl.witness.c1, refl.witness.c2) == (1, 1)
        fg = equivalent_at_origin(f, g)
        gf = equivalent_at_origin(g, f)
        assert fg.equivalent and gf.equivalent
        inv = fg.witness.inverse()
        assert (inv.c1, inv.c2) == (gf.witness.c1, gf.witness.c2)
        gh = equivalent_at_origin(g, h)
        fh = equivalent_at_origin(f, h)
        comp = fg.witness.compose(gh.witness)
        assert fh.equivalent and (comp.c1, comp.c2) == (fh.witness.c1, fh.witness.c2)


def test_irrational_rescaling_reported_algebraically():
    f = Jet([0, 0, 0, 0, 1, 1, 1, 1], exact=True)
    g = Jet([0, 0, 0, 0, 1, 2, 4, 8], exact=True)  # c2 = 2 with c1 = 1
    assert equivalent_at_origin(f, g).witness.c2 == F(1, 2)
    h = Jet([0, 0, 0, 0, 1, 0, 2, 0, 4], exact=True)   # c2^2 = 2
    k = Jet([0, 0, 0, 0, 1, 0, 1, 0, 1], exact=True)
    r = equivalent_at_origin(h, k)
    assert r.equivalent and not r.witness.rational
    assert r.witness.c2_power == 2 and r.witness.c2_value == 2


# dimensions -------------------------------------------------------------------

def test_dimension_examples():
    assert hol_dimension(Jet.zero(8), 5) == 14
    assert hol_dimension(Jet.monomial(4), 5) == 13
    assert hol_dimension(Jet([0, 0, 0, 0, 1, 0, 1]), 5) == 11
    assert hol_dimension(Jet.monomial(6), 5) == 12
    assert hol_dimension(norm(FamilyTag("TypeIII")), 7) == 16
    with pytest.raises(ClassifyError):
        hol_dimension(Jet.zero(8), 4)


def test_classify_report():
    out = classify(family_jet(FamilyTag("TypeV"), 12), 5)
    assert out["homogeneous"] and out["c"] == "3/2" and out["hol_dim"] == 12


# the extra-field ODE ----------------------------------------------------------

def test_weights4_examples():
    for p, q in [(F(1), F(2)), (F(-3, 2), F(1, 5)), (F(2), F(1))]:
        assert weights4_regenerate(p, q, 5, 8)[4] == 1
    g = weights4_regenerate(2, 1, 5, 10)  # 5*2 + 2 = 12 = 4*(2+1)
    assert g[5] == 0 and g.support() == [4]


@pytest.mark.parametrize("n", [5, 6, 8])
def test_weights4_sigma_relation(n):
    p, q = F(2, 3), F(-1, 4)
    g = weights4_regenerate(p, q, n, 9)
    assert n * p + 2 * q == 5 * g[5] + 4 * (p + q)
    assert weights4_residual(g, p, q, n).coeffs[:8] == (0,) * 8


def test_weights4_type_ii_fit():
    t = scale(strip_low(family_jet(FamilyTag("TypeII"), 12)), 24)
    sol = weights4_fit(t, 5)
    assert sol == (F(1, 3), F(-1, 3))
    p, q = sol
    assert weights4_regenerate(p, q, 5, 12).coeffs == t.coeffs


def test_weights4_residual_independent():
    """Substitute the regenerated series into the ODE with sympy."""
    p, q, n = F(1, 2), F(3), 6
    g = weights4_regenerate(p, q, n, 12)
    f = sum(sp.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(g.coeffs))
    P, Q = sp.Rational(1, 2), sp.Integer(3)
    resid = sp.expand((n * P + 2 * Q) * f - (1 + (P + Q) * X) * sp.diff(f, X) + 4 * X ** 3)
    assert all(resid.coeff(X, k) == 0 for k in range(12))
