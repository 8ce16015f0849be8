import pytest
import sympy as sp

from crtool.hypersurface import HSModel, SModel, admissible_model, enumerate_block_structures
from crtool.jet import FamilyTag, Jet, family_jet
from crtool.levi import (LeviError, adjoint_operator, check_2nondegeneracy, jordan_type, kernel_field, levi_form,
                         model_adjoint, toeplitz_shift)
from crtool.ring import Poly
from crtool.ring.linalg import poly_det

from oracles import to_sympy


def sym_matrix(M):
    return sp.Matrix([[to_sympy(e) for e in row] for row in M])


def test_levi_form_n3():
    x1, x2, s = sp.symbols("x1 x2 s")
    H = sym_matrix(levi_form(HSModel.single(3)))
    assert H == sp.Matrix([[2 * s, 2, 2 * x1], [2, 0, 0], [2 * x1, 0, 0]])


def test_levi_form_is_hessian_oracle():
    M = HSModel.single(5, Jet.monomial(4, 3))
    phi = to_sympy(M.defining_polynomial)
    xs = [sp.Symbol(f"x{j}") for j in range(1, 5)] + [sp.Symbol("s")]
    assert sym_matrix(levi_form(M)) == sp.hessian(phi, xs)


def test_levi_form_zero():
    M = SModel([[0, 0], [0, 0]])
    assert all(not e.terms for row in levi_form(M) for e in row)


def test_levi_form_n5_anti_triangular():
    H = sym_matrix(levi_form(HSModel.single(5)))
    for j in range(4):
        for k in range(4):
            if j + k > 3:
                assert H[j, k] == 0
            if j + k == 3:
                assert H[j, k] == 2


def test_kernel_examples():
    x1, x2, s = sp.symbols("x1 x2 s")
    assert [to_sympy(e) for e in kernel_field(HSModel.single(3))] == [0, x1, -1]
    assert [to_sympy(e) for e in kernel_field(HSModel.single(4))] == [0, x1, x1 * s + x2, -1]


def test_kernel_two_blocks_stacks():
    M = HSModel.from_blocks([2, 2], [1, -1])
    x1, x3 = sp.symbols("x1 x3")
    assert [to_sympy(e) for e in kernel_field(M)] == [0, x1, 0, x3, -1]


def test_adjoint_examples():
    tab = HSModel.single(3).table
    A = adjoint_operator(HSModel.single(3))
    assert sym_matrix(A) == sp.Matrix([[0, 0], [1, 0]])
    M4 = HSModel.single(4)
    T = sp.Matrix(3, 3, lambda r, c: 1 if r - c == 1 else 0)
    assert sym_matrix(adjoint_operator(M4)) == T + sp.Symbol("s") * T ** 2


@pytest.mark.parametrize("n", range(3, 9))
def test_single_block_identities(n):
    M = HSModel.single(n, family_jet(FamilyTag("TypeII"), 8))
    H = levi_form(M)
    v = kernel_field(M, H)
    Hs, vs = sym_matrix(H), sp.Matrix([to_sympy(e) for e in v])
    assert sp.expand(Hs * vs) == sp.zeros(n, 1)
    A = adjoint_operator(M, v)
    assert sym_matrix(A) == sym_matrix(model_adjoint(n, M.table))
    M0 = HSModel.single(n)
    assert [to_sympy(e) for e in kernel_field(M0)] == [to_sympy(e) for e in v]


@pytest.mark.parametrize("n", range(3, 9))
def test_structures_jordan_and_degeneracy(n):
    for sizes in enumerate_block_structures(n):
        M = admissible_model(sizes)
        H = levi_form(M)
        assert not poly_det(H).terms
        A = adjoint_operator(M)
        jt = jordan_type(A)
        assert sorted(jt.partition) == sorted(sizes)
        assert jt.constant


def test_jordan_examples():
    assert jordan_type(adjoint_operator(HSModel.single(5))).partition == [4]
    assert jordan_type(adjoint_operator(HSModel.from_blocks([2, 2], [1, -1]))).partition == [2, 2]
    assert jordan_type([[0] * 3 for _ in range(3)]).partition == [1, 1, 1]
    with pytest.raises(LeviError):
        jordan_type([[1, 0], [0, 0]])


def test_2nondegeneracy_n5():
    rep = check_2nondegeneracy(HSModel.single(5))
    assert rep["passed"] and rep["levi_degenerate"] and rep["kernel_rank_1"] and rep["adjoint_nonvanishing"]
    from crtool.ring import parse_rat
    assert abs(parse_rat(rep["certificates"]["minor_determinant_value"])) == 2 ** 4
    assert rep["jordan_type"] == [4]


def test_2nondegeneracy_all_ones_fails():
    rep = check_2nondegeneracy(HSModel.from_blocks([1, 1], [1, -1]))
    assert not rep["passed"]
    assert rep["failure"]["condition"] == "adjoint_nonvanishing"


def test_2nondegeneracy_n3():
    assert check_2nondegeneracy(HSModel.single(3))["passed"]


def test_2nondegeneracy_smodel_generic_path():
    from crtool.hypersurface import smatrix_normal_form
    rep = check_2nondegeneracy(SModel(smatrix_normal_form([2, 2])))
    assert rep["passed"] and rep["jordan_type"] == [2, 2]


def test_toeplitz_shift():
    T = toeplitz_shift(3)
    assert T == [[0, 0, 0], [1, 0, 0], [0, 1, 0]]
