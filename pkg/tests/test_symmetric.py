"""xi . R, the symmetric-pair test, the n = 2 exemplar and the change of q."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holonomy_lab import linalg
from holonomy_lab.curvature import CurvatureTensor, bianchi_defect, check_curvature_identities
from holonomy_lab.families import FamilySpec, LprimeBlock, family_g
from holonomy_lab.hermitian import build_B, make_space
from holonomy_lab.parabolic import Subalgebra, element, grading_element, parabolic_basis
from holonomy_lab.prop1 import (Prop1Params, derived_components, lp_defects, parameter_basis,
                                prop1_construct)
from holonomy_lab.quat import I, J, K, ONE, ZERO, QVector, Quat, exact_matrix, mdot, zeros
from holonomy_lab.symmetric import (EXEMPLAR_G, SymmetricPairError, act_on_R, change_base_q,
                                    d_prime, d_prime_by_conjugation, esymS_solutions,
                                    exemplar_Lprime, exemplar_n2, exemplar_params, exemplar_space,
                                    exemplar_spec, invariant_tensors, is_symmetric_pair,
                                    literal_q_prime_isotropic, n1_subspaces, new_basis_matrix,
                                    q_prime, solve_q_shift, transform_tensor, translation_algebra)

from conftest import small_fractions

e = lambda n, t, u=ONE: QVector.basis(n, t, u)


@pytest.fixture(scope="module")
def pair():
    return exemplar_n2()


# ---------------------------------------------------------------------------
# xi . R

def test_zero_xi_gives_zero(space1):
    R = prop1_construct(Prop1Params(C01=ONE, S01=e(1, 0)), space1)
    assert act_on_R(element(space1), R).is_zero()


# grade of each parameter under ad(1): R' 0, P0 1, C and A 2, S 3, D 4
WEIGHTS = {"C": 2, "A": 2, "S": 3, "R": 0, "P": 1, "d": 4}


def test_grading_element_scales_homogeneous_tensors(space1):
    one = grading_element(space1)
    for label, prm in parameter_basis(space1):
        R = prop1_construct(prm, space1)
        assert act_on_R(one, R) == R.scale(WEIGHTS[label[0]]), label


@settings(max_examples=10)
@given(st.lists(small_fractions, min_size=4, max_size=4))
def test_action_is_bilinear(c):
    space = make_space(1)
    B = parabolic_basis(space)
    R1 = prop1_construct(Prop1Params(S01=e(1, 0), d=(1, 0, 2, 0, 0)), space)
    R2 = prop1_construct(Prop1Params(C02=I), space)
    xi = B[0].scale(c[0]) + B[9].scale(c[1])
    lhs = act_on_R(xi, R1.scale(c[2]) + R2.scale(c[3]))
    rhs = (act_on_R(B[0], R1).scale(c[0] * c[2]) + act_on_R(B[9], R1).scale(c[1] * c[2])
           + act_on_R(B[0], R2).scale(c[0] * c[3]) + act_on_R(B[9], R2).scale(c[1] * c[3]))
    assert lhs == rhs


def test_action_preserves_bianchi_for_any_skew_xi(space1):
    N = space1.N
    rng = np.random.default_rng(7)
    A = zeros(N)
    for i in range(N):
        for j in range(i + 1, N):
            v = Fraction(int(rng.integers(-3, 4)))
            A[i, j], A[j, i] = v, -v
    eta_inv = exact_matrix(linalg.inverse(space1.eta.tolist()))
    xi = mdot(eta_inv, A)
    assert not (mdot(xi.T, space1.eta) + mdot(space1.eta, xi)).any()
    for label, prm in parameter_basis(space1)[::6]:
        T = act_on_R(xi, prop1_construct(prm, space1))
        assert bianchi_defect(T) is None, label


# ---------------------------------------------------------------------------
# the symmetric-pair test

def test_flat_case_is_symmetric(space1):
    ok, cert = is_symmetric_pair(Subalgebra(space1, []), CurvatureTensor(space1.N, {}))
    assert ok and cert.violation_count == 0


def test_exemplar_is_symmetric(pair):
    ok, cert = is_symmetric_pair(pair.g, pair.R)
    assert ok
    assert (cert.dim_g, cert.span_dim, cert.violation_count) == (6, 6, 0)
    assert all(cert.eliminations.values())


def test_exemplar_algebra_is_g6_with_the_exemplar_Lprime(pair):
    assert pair.g.dim == 6
    assert pair.g.same_span(family_g(exemplar_spec(), pair.space))
    for X in exemplar_Lprime().basis:
        assert pair.g.contains(element(pair.space, X=X))


def test_exemplar_tensor(pair):
    space = pair.space
    comp = derived_components(exemplar_params(), space)
    assert comp.S[0][3] == e(2, 0, J) + e(2, 1, I)
    rep = check_curvature_identities(pair.R, space, generators=pair.g.matrices())
    assert rep.all_pass, rep.violations
    assert all(v is None for v in lp_defects(exemplar_params(), space).values())
    for xi in pair.g.basis:
        assert act_on_R(xi, pair.R).is_zero()


def test_exemplar_gram(space2G):
    assert space2G.g(e(2, 0), e(2, 1)) == K * Fraction(-1, 2)
    assert space2G.signature() == (4, 12)


def test_other_generator_order_fails(space2G):
    spec = FamilySpec("g6", n=2, Lprime=[LprimeBlock(2, 0)], G=EXEMPLAR_G)
    g = family_g(spec, space2G)
    R = prop1_construct(exemplar_params(), space2G)
    with pytest.raises(SymmetricPairError):
        is_symmetric_pair(g, R)
    assert esymS_solutions(space2G, build_B(2, n=2)) == []


def test_exemplar_Lprime_admits_exactly_one_direction(space2G):
    sols = esymS_solutions(space2G, exemplar_Lprime())
    assert len(sols) == 1
    S01, S02 = sols[0]
    assert S01.scale(-1) == e(2, 0) and S02.scale(-1) == -e(2, 1)


def test_g1_with_C01_is_not_symmetric(space1):
    g = family_g(FamilySpec("g1", n=1, m=1, h0="sp1"), space1)
    R = prop1_construct(Prop1Params(C01=ONE), space1)
    ok, cert = is_symmetric_pair(g, R)
    assert not ok
    assert cert.violation_count > 0 and cert.violations
    assert not cert.eliminations["pr_H g = 0"]
    assert not cert.eliminations["C = 0"]
    assert not cert.span_ok


def test_tensor_outside_the_algebra_is_an_error(pair):
    R = prop1_construct(Prop1Params(C01=ONE), pair.space)
    with pytest.raises(SymmetricPairError):
        is_symmetric_pair(pair.g, R)


# ---------------------------------------------------------------------------
# changing q

def test_q_prime_is_null(space2G):
    X = QVector((Quat(1, 2), Quat(0, 0, -1, 3)))
    full = space2G.g_full
    qn = q_prime(space2G, X)
    p = QVector.basis(4, 0)
    assert full(qn, qn) == ZERO and full(p, qn) == ONE
    assert not literal_q_prime_isotropic(space2G, X)
    unit = QVector((ONE, ZERO))
    assert literal_q_prime_isotropic(space2G, unit)


def test_new_basis_keeps_the_gram(space2G):
    P = new_basis_matrix(space2G, QVector((Quat(1, 0, 2), Quat(0, 1))))
    assert (mdot(mdot(P.T, space2G.eta), P) == space2G.eta).all()


def test_zero_shift_changes_nothing(space2G):
    prm = Prop1Params(S01=e(2, 0), d=(1, 2, 3, 4, 5))
    assert d_prime(prm, space2G, QVector.zeros(2)) == derived_components(prm, space2G).D


@pytest.mark.parametrize("X", [QVector((Quat(1, 2, 0, -1), Quat(0, 1, Fraction(1, 3), 2))),
                               QVector((ZERO, Quat(0, 0, 0, 1)))])
def test_d_prime_matches_conjugation(space2G, X):
    prm = Prop1Params(S01=e(2, 0), S02=-e(2, 1), d=(1, 2, -1, 3, Fraction(1, 2)))
    R = prop1_construct(prm, space2G)
    assert d_prime(prm, space2G, X) == d_prime_by_conjugation(R, space2G, X)


def test_transformed_tensor_is_again_a_curvature_tensor(space2G):
    prm = Prop1Params(S01=e(2, 0), S02=-e(2, 1), d=(0, 1, 0, 0, 2))
    R = prop1_construct(prm, space2G)
    T = transform_tensor(R, new_basis_matrix(space2G, QVector((Quat(1), Quat(0, 1)))))
    assert check_curvature_identities(T, space2G).all_pass


def test_exemplar_base_change():
    space = exemplar_space()
    bc = change_base_q(exemplar_params(), space)
    assert bc.d01_d02_zero and bc.all_zero


@pytest.mark.parametrize("d", [(1, 0, 0, 0, 0), (1, 2, -1, 3, Fraction(1, 2)), (0, 0, 0, 0, 7)])
def test_solved_shift_kills_D(space2G, d):
    prm = Prop1Params(S01=e(2, 0), S02=-e(2, 1), d=d)
    bc = change_base_q(prm, space2G)
    assert bc.X
    assert bc.d01_d02_zero and bc.all_zero
    R = prop1_construct(prm, space2G)
    assert d_prime_by_conjugation(R, space2G, bc.X) == bc.D_prime


def test_no_shift_without_translation_data(space2G):
    assert solve_q_shift(Prop1Params(d=(1, 0, 0, 0, 0)), space2G) is None


# ---------------------------------------------------------------------------
# n = 1

@pytest.mark.parametrize("name", ["ImH", "C"])
def test_n1_constraints_force_S_zero(space1, name):
    L = n1_subspaces()[name]
    assert esymS_solutions(space1, L) == []
    inv = invariant_tensors(translation_algebra(space1, L))
    assert inv.S_zero
    assert inv.dim_invariant == 5   # the D-only tensors survive


def test_n1_subspaces():
    sub = n1_subspaces()
    assert (sub["ImH"].dim, sub["C"].dim) == (3, 2)
