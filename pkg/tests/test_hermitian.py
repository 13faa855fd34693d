from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given

from holonomy_lab.hermitian import (HermitianSpace, RealSubspace, SpaceError, build_A, build_B,
                                    build_L, complex_block, decompose_L, gram_from_forms,
                                    imaginary_block, make_space, quaternionic_block,
                                    recover_g_from_eta, rho_closure)
from holonomy_lab.quat import I, J, K, ONE, UNITS, QMatrix, QVector, Quat
from holonomy_lab.symmetric import EXEMPLAR_G

from conftest import quats, qvectors

e = lambda n, t, u=ONE: QVector.basis(n, t, u)


def test_signature(space1, space2G):
    assert space1.signature() == (4, 8)
    assert space2G.signature() == (4, 12)


def test_standard_gram_entries(space1):
    assert space1.g(e(1, 0), e(1, 0)) == ONE
    full = space1.full_gram
    assert full[0, 2] == ONE and full[0, 0] == 0 and full[2, 2] == 0


def test_rejects_bad_gram():
    with pytest.raises(SpaceError):
        make_space(2, QMatrix(((ONE, I), (I, ONE))))          # not Hermitian
    with pytest.raises(SpaceError):
        make_space(2, QMatrix(((ONE, Quat(2)), (Quat(2), ONE))))  # indefinite


def test_case3_gram_from_skew_form():
    G = gram_from_forms(2, m2=2, wc=[[0, 1], [-1, 0]])
    assert G == QMatrix(((ONE, J), (-J, ONE)))
    # g((1, -j), (1, -j)) = 0: this Gram matrix is degenerate and rejected
    with pytest.raises(SpaceError):
        make_space(2, G)
    half = gram_from_forms(2, m2=2, wc=[[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
    assert make_space(2, half).signature() == (4, 12)


@given(quats, qvectors(2), qvectors(2))
def test_sesquilinear(a, X, Y):
    space = make_space(2, EXEMPLAR_G)
    assert space.g(X.scale(a), Y) == a * space.g(X, Y)
    assert space.g(X, Y.scale(a)) == space.g(X, Y) * a.conj()
    assert space.g(Y, X).conj() == space.g(X, Y)


def test_recover_g_examples(space1, space2G):
    v = lambda n, t, u=ONE: e(n, t, u).to_real()
    assert recover_g_from_eta(space1, v(1, 0), v(1, 0)) == ONE
    assert recover_g_from_eta(space1, v(1, 0), v(1, 0, I)) == -I
    assert recover_g_from_eta(space2G, v(2, 0), v(2, 1)) == K * Fraction(-1, 2)


def test_recover_g_on_all_basis_pairs(any_space):
    n = any_space.n
    vecs = [(e(n, t, u).to_real(), e(n, t, u)) for t in range(n) for u in UNITS]
    for (x, X), (y, Y) in product(vecs, vecs):
        assert recover_g_from_eta(any_space, x, y) == any_space.g(X, Y)


def test_build_L_examples():
    assert build_L(1, 0, 0, n=1).dim == 4
    assert build_L(0, 1, 0, n=1) == RealSubspace(1, (e(1, 0, I), e(1, 0, J), e(1, 0, K)))
    L = build_L(0, 0, 0, build_B(2), n=2)
    assert L == RealSubspace(2, (e(2, 0), e(2, 1), e(2, 0, I) + e(2, 1, J)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_build_L_dimension_formula(n):
    for m, m1, m2 in product(range(n + 1), repeat=3):
        rest = n - m - m1 - m2
        if rest < 0 or rest == 1:
            continue
        Lp = build_B(rest, n=n, offset=m + m1 + m2) if rest >= 2 else None
        L = build_L(m, m1, m2, Lp, n=n, space=make_space(n))
        assert L.dim == 4 * m + 3 * m1 + 2 * m2 + (Lp.dim if Lp else 0)


def test_build_L_rejects_overlap():
    with pytest.raises(SpaceError):
        build_L(1, 0, 0, build_B(2, n=2), n=2)


def test_block_generator_counts():
    assert build_B(2).dim == 3
    assert build_B(3).dim == 5
    A3 = build_A(3)
    assert A3 == RealSubspace(3, (e(3, 0), e(3, 2), e(3, 0, I) + e(3, 1, J), e(3, 1) + e(3, 2, I)))
    with pytest.raises(SpaceError):
        build_B(0)
    with pytest.raises(SpaceError):
        build_A(2)


def test_rho_closure_values():
    assert rho_closure(build_A(3)).dim == 0
    assert rho_closure(build_B(1)).dim == 0
    for l in (2, 3, 4):
        assert rho_closure(build_B(l)) == build_B(l)


def test_rho_never_grows():
    for L in (build_A(3), build_A(5), build_B(2, swapped=True), complex_block(2, 0, 2),
              imaginary_block(1, 0, 1), quaternionic_block(1, 0, 1)):
        rho = rho_closure(L)
        assert rho <= L and rho.dim <= L.dim


def test_rho_witness_in_B2():
    B2 = build_B(2)
    # X = f2, Y = -f1 : jX - iY = j f2 + i f1, a generator of B(2)
    assert (e(2, 1).scale(J) - (-e(2, 0)).scale(I)) in B2


@pytest.mark.parametrize("L,expected", [
    (quaternionic_block(1, 0, 1), (4, 0, 0, 0)),
    (imaginary_block(1, 0, 1), (0, 3, 0, 0)),
    (build_B(2), (0, 0, 0, 3)),
    (complex_block(2, 0, 2), (0, 0, 4, 0)),
])
def test_decompose_examples(L, expected):
    assert tuple(p.dim for p in decompose_L(L).parts()) == expected


def test_decompose_mixed_is_orthogonal_and_exhaustive():
    n = 5
    space = make_space(n)
    L = build_L(1, 1, 1, build_B(2, n=n, offset=3), n=n, space=space)
    parts = decompose_L(L, space).parts()
    assert sum(p.dim for p in parts) == L.dim
    total = RealSubspace.zero(n)
    for p in parts:
        total = total + p
    assert total == L
    for a in range(4):
        for b in range(a + 1, 4):
            assert parts[a].is_g_orthogonal_to(space, parts[b])
