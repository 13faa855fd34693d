"""The parametrization of R(sp(1, n+1)_Hp) by free data."""

from fractions import Fraction

import pytest
from hypothesis import given

from holonomy_lab.curvature import CurvatureError, CurvatureTensor, check_curvature_identities
from holonomy_lab.parabolic import element_from_matrix
from holonomy_lab.prop1 import (Prop1Params, derived_components, lp_defects, parameter_basis,
                                parameter_count, parameter_map_report, prop1_construct)
from holonomy_lab.quat import I, J, K, ONE, ZERO, QMatrix, QVector, Quat, left_mult, mdot, realify

from conftest import quats, qvectors


def test_zero_params_give_zero_tensor(space1):
    assert prop1_construct(Prop1Params(), space1).is_zero()


def test_C_block_from_C01(space1):
    C = derived_components(Prop1Params(C01=ONE), space1).C
    assert C[0][3] == -J
    assert C[2][3] == -ONE
    assert C[1][3] == ZERO
    assert C[1][2] == J


def test_A01_example(space1):
    A = QMatrix(((I,),))
    comp = derived_components(Prop1Params(A01=A), space1)
    assert (comp.T0 == mdot(left_mult(I, 1), realify(A)) * Fraction(-1, 2)).all()
    assert comp.A[2][3] == -A
    R = prop1_construct(Prop1Params(A01=A), space1)
    assert check_curvature_identities(R, space1).all_pass


def test_values_sit_where_they_should(space1):
    R = prop1_construct(Prop1Params(S01=QVector((Quat(1, 2),)), d=(1, 0, 0, 0, 0)), space1)
    q0 = space1.q_index()
    u = element_from_matrix(space1, R.value(q0, q0 + 1))
    assert u.X == QVector((Quat(1, 2),)) and u.b == I
    # p-rows vanish apart from the B block
    for r in range(4):
        for x in range(4, q0):
            assert not R.value(r, x).any()


def test_parameter_count_formula():
    assert parameter_count(1, 3, 5, 8) == 43
    assert parameter_count(2, 10, 35, 40) == 134


def test_parameter_map_n1_is_exhaustive_and_injective(space1):
    rep = parameter_map_report(space1)
    assert rep.ok
    assert (rep.rank, rep.parameter_count, rep.dim_R_parabolic) == (43, 43, 43)
    assert (rep.dim_spn, rep.dim_R_spn, rep.dim_P_spn) == (3, 5, 8)


@pytest.fixture(scope="module")
def basis1(space1):
    return parameter_basis(space1)


def test_every_basis_tensor_passes_the_suite(space1, basis1):
    for label, prm in basis1:
        rep = check_curvature_identities(prop1_construct(prm, space1), space1)
        assert rep.all_pass, (label, rep.violations)


def test_contraction_identities_hold(space1, basis1):
    for label, prm in basis1:
        assert all(v is None for v in lp_defects(prm, space1).values()), label


def test_contraction_identities_with_offdiagonal_gram(space2G):
    basis = parameter_basis(space2G)
    for label, prm in basis[::9]:
        assert all(v is None for v in lp_defects(prm, space2G).values()), label
        rep = check_curvature_identities(prop1_construct(prm, space2G), space2G)
        assert rep.all_pass, (label, rep.violations)


@given(quats, quats, qvectors(1), qvectors(1))
def test_construction_is_linear(a, b, X, Y):
    from holonomy_lab.hermitian import make_space
    space = make_space(1)
    lhs = prop1_construct(Prop1Params(C01=a, S01=X, S02=Y, C02=b), space)
    rhs = (prop1_construct(Prop1Params(C01=a, S02=Y), space)
           + prop1_construct(Prop1Params(S01=X, C02=b), space))
    assert lhs == rhs


def test_validation_errors(space1):
    with pytest.raises(CurvatureError):
        prop1_construct(Prop1Params(A01=QMatrix(((ONE,),))), space1)   # Op(1) is not in sp(1)
    with pytest.raises(CurvatureError):
        prop1_construct(Prop1Params(d=(1, 2)), space1)
    with pytest.raises(CurvatureError):
        prop1_construct(Prop1Params(S01=QVector.zeros(2)), space1)
