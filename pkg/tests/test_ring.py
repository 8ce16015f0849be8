from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from crtool.ring import (HOLO, REAL, ANTI, GaussRat, Grading, I, Poly, QSqrt2, SQRT2, RationalFormatError,
                         VarTable, VarTableMismatch, conj, format_rat, parse_rat)
from crtool.ring import kernels
from crtool.ring.linalg import nullspace, poly_det, rank, rref, solve_in_span

from oracles import to_sympy

TAB = VarTable([("x1", REAL), ("x2", REAL), ("x3", REAL)])
CTAB = VarTable(
    [("x1", REAL), ("y1", REAL), ("u", REAL), ("v", REAL), ("z1", HOLO), ("w", HOLO), ("z1b", ANTI), ("wb", ANTI)],
    realpair={"z1": ("x1", "y1"), "w": ("u", "v")},
    conjpair={"z1": "z1b", "w": "wb"},
)
x1, x2, x3 = (Poly.var(TAB, n) for n in ("x1", "x2", "x3"))


# rationals -----------------------------------------------------------------

@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-2/1", Fraction(-2)), ("5", Fraction(5)),
                                        ("0", Fraction(0)), ("0/1", Fraction(0))])
def test_parse_canonical(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("text", ["2/4", "-0", "+1", "1/-2", " 1/2", "1/0", "01", "1.5", "", "3/1 "])
def test_parse_rejects_noncanonical(text):
    with pytest.raises(RationalFormatError):
        parse_rat(text)


def test_format_always_has_denominator():
    assert format_rat(3) == "3/1"
    assert format_rat(Fraction(-6, 4)) == "-3/2"


@given(st.fractions())
def test_format_parse_roundtrip(q):
    assert parse_rat(format_rat(q)) == q


# Gaussian rationals --------------------------------------------------------

gauss = st.builds(GaussRat.make, st.fractions(max_denominator=20), st.fractions(max_denominator=20))


@given(gauss, gauss, gauss)
def test_gauss_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if b != 0:
        assert (a / b) * b == a


@given(gauss)
def test_conjugation_is_involution(a):
    assert conj(conj(a)) == a


def test_real_results_collapse_to_fraction():
    assert isinstance(I * I, Fraction) and I * I == -1


# polynomial arithmetic -----------------------------------------------------

def test_binomial_square():
    assert (x1 + x2) * (x1 + x2) == x1 ** 2 + x1 * x2 * 2 + x2 ** 2


def test_additive_inverse_is_empty():
    p = x1 * x2 + 3
    assert (p + (-p)).terms == {}


def test_scale_half():
    assert (x1 * 2).scale(Fraction(1, 2)) == x1


def test_table_mismatch():
    other = VarTable([("a", REAL)])
    with pytest.raises(VarTableMismatch):
        x1 + Poly.var(other, "a")


def test_differentiate_examples():
    p = x1 ** 2 * x3
    assert p.diff("x1") == x1 * x3 * 2
    assert p.diff("x2").is_zero()
    z1 = Poly.var(CTAB, "z1")
    assert (z1 ** 2).scale(I).diff("z1") == z1.scale(2 * I)
    with pytest.raises(KeyError):
        p.diff("nope")


def test_substitute_examples():
    p = x1 ** 2 * x3 + x1 * x2 * 2
    assert p.subs({"x3": 0}) == x1 * x2 * 2
    assert p.evaluate({"x1": 1, "x2": 1, "x3": 1}) == 3
    assert p.subs({"x1": x1, "x2": x2, "x3": x3}) == p
    with pytest.raises(KeyError):
        p.subs({"q": 0})


def test_weight_decompose_unit_weights():
    p = x1 + x1 ** 2
    parts = p.weight_decompose(Grading({"x1": 1, "x2": 1, "x3": 1}))
    assert parts == {1: x1, 2: x1 ** 2}


def test_weight_decompose_missing_weight():
    with pytest.raises(ValueError):
        (x1 * x2).weight_decompose(Grading({"x1": 1}))


def test_realify_examples():
    z1, w, wb = (Poly.var(CTAB, n) for n in ("z1", "w", "wb"))
    X1, Y1, U = (Poly.var(CTAB, n) for n in ("x1", "y1", "u"))
    assert z1.realify() == (X1, Y1)
    assert (z1 ** 2).scale(I).realify() == ((X1 * Y1).scale(-2), X1 ** 2 - Y1 ** 2)
    assert (w + wb).realify() == (U * 2, Poly.zero(CTAB))


def test_serialization_is_sorted_and_roundtrips():
    p = x3 + x1 ** 2 * Fraction(1, 3) + x1 * x2
    data = p.to_json()
    assert data[0] == {"coeff": "1/3", "exps": [2, 0, 0]}
    assert Poly.from_json(TAB, data) == p


def test_divexact():
    p = (x1 + x2) * (x1 - x3 * 2)
    assert p.divexact(x1 + x2) == x1 - x3 * 2
    with pytest.raises(ArithmeticError):
        (x1 * x1 + 1).divexact(x1)


# property tests with sympy as oracle ---------------------------------------

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, table=TAB, max_terms=4, max_exp=3):
    n = len(table)
    items = draw(st.lists(st.tuples(st.tuples(*[st.integers(0, max_exp)] * n), coef), max_size=max_terms))
    return Poly.from_exps(table, items)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys(), st.sampled_from(["x1", "x2", "x3"]), st.sampled_from(["x1", "x2", "x3"]))
def test_mixed_partials_commute(p, a, b):
    assert p.diff(a).diff(b) == p.diff(b).diff(a)
    assert to_sympy(p.diff(a)) == sp.diff(to_sympy(p), sp.Symbol(a))


@given(polys(), st.sampled_from([1, 2, Fraction(1, 3)]), st.sampled_from([0, 1, Fraction(3, 2)]))
def test_weight_components_sum_back(p, w1, w2):
    parts = p.weight_decompose(Grading({"x1": w1, "x2": w2, "x3": 1}))
    total = Poly.zero(TAB)
    for wt, part in parts.items():
        total = total + part
        for key in part.terms:
            ex = part.exps(key)
            assert ex[0] * Fraction(w1) + ex[1] * Fraction(w2) + ex[2] == wt
    assert total == p


@given(polys(CTAB, 3, 2), polys(CTAB, 3, 2))
def test_realify_multiplication_law(p, q):
    pr, pi = p.realify()
    qr, qi = q.realify()
    r, i = (p * q).realify()
    assert r == pr * qr - pi * qi
    assert i == pr * qi + pi * qr


@given(polys(max_terms=3, max_exp=2), polys(max_terms=2, max_exp=2))
def test_substitution_matches_sympy(p, q):
    got = to_sympy(p.subs({"x1": q}))
    ref = sp.expand(to_sympy(p).subs(sp.Symbol("x1"), to_sympy(q)))
    assert sp.expand(got - ref) == 0


# kernels -------------------------------------------------------------------

@given(polys(), polys())
def test_backends_agree(a, b):
    py = kernels.backend_module("python")
    try:
        cy = kernels.backend_module("cython")
    except ImportError:
        pytest.skip("compiled kernels not built")
    assert py.mul_terms(a.terms, b.terms) == cy.mul_terms(a.terms, b.terms)
    assert py.add_terms(a.terms, b.terms, -1) == cy.add_terms(a.terms, b.terms, -1)
    sh = TAB.shift("x2")
    assert py.diff_terms(a.terms, sh) == cy.diff_terms(a.terms, sh)


# linear algebra ------------------------------------------------------------

def test_rank_and_nullspace():
    M = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)], [Fraction(1), Fraction(0), Fraction(1)]]
    assert rank(M) == 2
    ns = nullspace(M)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(row, ns[0])) == 0 for row in M)
    R, piv = rref(M)
    assert piv == [0, 1]


def test_solve_in_span():
    rows = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(1)]]
    assert solve_in_span(rows, [Fraction(2), Fraction(3), Fraction(5)]) == [2, 3]
    assert solve_in_span(rows, [Fraction(1), Fraction(0), Fraction(0)]) is None


def test_poly_det_against_sympy():
    M = [[x1, x2, Poly.const(TAB, 1)], [x2, x3, x1], [Poly.const(TAB, 2), x1, x3]]
    ref = sp.Matrix([[to_sympy(e) for e in row] for row in M]).det()
    assert sp.expand(to_sympy(poly_det(M)) - ref) == 0


def test_qsqrt2():
    assert SQRT2 * SQRT2 == 2
    a = QSqrt2(1, 1)
    assert a * QSqrt2(-1, 1) == 1


@given(polys(CTAB, 4, 2), polys(CTAB, 4, 2))
def test_backends_agree_on_gaussian_coefficients(a, b):
    try:
        cy = kernels.backend_module("cython")
    except ImportError:
        pytest.skip("compiled kernels not built")
    a = a * (Poly.var(CTAB, "z1").scale(I) + 1)
    assert kernels.backend_module("python").mul_terms(a.terms, b.terms) == cy.mul_terms(a.terms, b.terms)


def test_environment_forces_fallback():
    import os
    import subprocess
    import sys

    code = "from crtool.ring import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, CRTOOL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
