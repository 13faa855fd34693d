"""sp(1, n+1)_Hp: brackets, the bivector picture, grading and the f-map."""

from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from holonomy_lab import linalg
from holonomy_lab.parabolic import (AlgebraError, Subalgebra, bivector_labels, bivector_to_matrix,
                                    bracket, commutes_with_structure, element, element_from_matrix,
                                    f_projection, full_parabolic, grading_decompose,
                                    grading_element, is_eta_skew, matrix_commutator,
                                    parabolic_basis, sp_basis, sp_condition, to_bivector)
from holonomy_lab.quat import I, J, K, ONE, UNITS, ZERO, QMatrix, QVector, Quat, mdot, realify

from conftest import qmatrices, quats, qvectors


def test_sp1_basis(space1):
    basis = sp_basis(1)
    assert basis == [QMatrix(((u,),)) for u in (I, J, K)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sp_dimension_matches_sympy_nullspace(n):
    # independent oracle: the real linear condition A^t + conj(A) = 0, solved by sympy
    rows = []
    for idx in range(4 * n * n):
        vec = [0] * (4 * n * n)
        vec[idx] = 1
        Aq = QMatrix.from_real(vec, n)
        rows.append(sp_condition(Aq, QMatrix.identity(n)).to_real())
    M = sympy.Matrix(rows).T
    assert len(sp_basis(n)) == 4 * n * n - M.rank() == n * (2 * n + 1)


def test_sp_dimension_with_offdiagonal_gram(space2G):
    basis = sp_basis(2, space2G.G)
    assert len(basis) == 10
    for A in basis:
        assert not sp_condition(A, space2G.G)


def test_bracket_examples(space1):
    e1 = QVector.basis(1, 0)
    assert bracket(element(space1, a=I), element(space1, a=J)) == element(space1, a=-2 * K)
    assert bracket(element(space1, X=e1), element(space1, X=e1.scale(I))) == element(space1, b=-2 * I)
    X, c = QVector((Quat(1, 2, 0, -1),)), Quat(0, 1, 1)
    u = element(space1, a=ONE, b=Quat(0, 3, 0, 1))
    assert bracket(u, element(space1, X=X, b=c)) == element(space1, X=X, b=2 * c)


def test_bracket_equals_matrix_commutator(any_space):
    basis = parabolic_basis(any_space)
    assert len(basis) == 7 + 4 * any_space.n + any_space.n * (2 * any_space.n + 1)
    for u, v in combinations(basis, 2):
        assert (bracket(u, v).matrix() == matrix_commutator(u, v)).all()


@given(quats, qmatrices(1), qvectors(1), quats)
def test_every_element_is_skew_and_quaternionic(a, A, X, b):
    from holonomy_lab.hermitian import make_space
    space = make_space(1)
    A = QMatrix(((A[0, 0].im(),),))
    u = element(space, a=a, A=A, X=X, b=b.im())
    M = u.matrix()
    assert is_eta_skew(space, M) and commutes_with_structure(space, M)
    assert element_from_matrix(space, M) == u


def test_element_from_matrix_rejects_foreign_matrix(space1):
    from holonomy_lab.quat import zeros
    M = zeros(12)
    M[0, 4] = 1
    with pytest.raises(AlgebraError):
        element_from_matrix(space1, M)


def test_bivector_examples(space1):
    assert to_bivector(element(space1)) == {}
    assert bivector_labels(space1, to_bivector(element(space1, b=I))) == {"p^ip": 1, "jp^kp": -1}
    assert bivector_labels(space1, to_bivector(element(space1, a=ONE))) == {
        "p^q": -1, "ip^iq": -1, "jp^jq": -1, "kp^kq": -1}


def test_bivector_roundtrip(any_space):
    basis = parabolic_basis(any_space)
    vecs = []
    for u in basis:
        c = to_bivector(u)
        assert (bivector_to_matrix(any_space, c) == u.matrix()).all()
        vecs.append(linalg.to_dense({i * any_space.N + j: v for (i, j), v in c.items()},
                                    any_space.N ** 2))
    assert linalg.rank(vecs) == len(basis)


def test_grading(any_space):
    one = grading_element(any_space)
    for u in parabolic_basis(any_space):
        for alpha, part in enumerate(grading_decompose(u)):
            assert bracket(one, part) == part.scale(alpha)


def test_grading_examples(space1):
    one = grading_element(space1)
    X = element(space1, X=QVector((Quat(1, 1),)))
    b = element(space1, b=J)
    assert bracket(one, X) == X and bracket(one, b) == b.scale(2)
    g0, g1, g2 = grading_decompose(element(space1, a=I, A=QMatrix(((K,),))))
    assert not g1 and not g2


def test_f_projection_examples(space1):
    f = f_projection(element(space1, a=I, b=J))
    assert (f.a0, f.a1, f.A, f.X) == (0, I, QMatrix.zeros(1), QVector.zeros(1))
    assert not any(f_projection(element(space1, b=K)).to_vector())


def test_f_projection_is_a_homomorphism(any_space):
    basis = parabolic_basis(any_space)
    for u, v in combinations(basis, 2):
        A, B = f_projection(u).affine_matrix(), f_projection(v).affine_matrix()
        assert (mdot(A, B) - mdot(B, A) == f_projection(bracket(u, v)).affine_matrix()).all()


def test_f_kernel_is_ImH(space1):
    basis = parabolic_basis(space1)
    images = [f_projection(u).to_vector() for u in basis]
    assert len(basis) - linalg.rank(images) == 3


def test_subalgebra_closure_and_rejection(space1):
    e1 = QVector.basis(1, 0)
    with pytest.raises(AlgebraError):
        Subalgebra(space1, [element(space1, X=e1), element(space1, X=e1.scale(I))])
    g = Subalgebra(space1, [element(space1, X=e1), element(space1, X=e1.scale(I)),
                            element(space1, b=I)])
    assert g.dim == 3
    assert full_parabolic(space1).dim == 14


def test_spanned_by_drops_dependent_generators(space1):
    gens = [element(space1, b=I), element(space1, b=I).scale(2), element(space1, b=J),
            element(space1, b=K)]
    assert Subalgebra.spanned_by(space1, gens).dim == 3
