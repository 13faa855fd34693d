"""The nine families and the two non-Berger algebras."""

from fractions import Fraction

import pytest

from holonomy_lab.families import (COUNTEREXAMPLES, FAMILIES, FamilyError, FamilySpec, LprimeBlock,
                                   complex_line_algebra, family_g, lemma1_algebra, minimal_specs,
                                   translation_part)
from holonomy_lab.hermitian import RealSubspace, build_B, make_space
from holonomy_lab.parabolic import (AlgebraError, Subalgebra, commutes_with_structure, element,
                                    is_eta_skew, sp_basis)
from holonomy_lab.quat import I, J, K, ONE, ZERO, QMatrix, QVector, Quat

MINIMAL_DIMS = {"g1": 9, "g2": 9, "g3": 10, "g4": 10, "g5": 9, "g6": 6, "g7": 12, "g8": 13, "g9": 9}
op = lambda c: QMatrix(((c,),))
SP1 = [op(I), op(J), op(K)]


@pytest.fixture(scope="module")
def minimal():
    return {name: family_g(spec) for name, spec in minimal_specs().items()}


def test_every_family_has_a_minimal_instance(minimal):
    assert sorted(minimal) == sorted(FAMILIES)
    assert {k: g.dim for k, g in minimal.items()} == MINIMAL_DIMS


def test_structure_of_every_family(minimal):
    for name, g in minimal.items():
        space = g.space
        for M in g.matrices():
            assert is_eta_skew(space, M) and commutes_with_structure(space, M), name
        for u in (I, J, K):
            assert g.contains(element(space, b=u)), name
        assert not g.closure_defects(), name
        assert g.compliance.ok, (name, g.compliance.failures())


def test_translation_part_is_the_prescribed_subspace(minimal):
    for name, g in minimal.items():
        T = translation_part(g.metadata, g.space)
        # for g9 the generators (A, psi(A)) add U = psi(h) to the projection
        U = RealSubspace.span(g.space.n, list(g.metadata.U)) if g.metadata.U else None
        assert g.projection_dims()["Hn"] == T.dim + (U.dim if U else 0), name
        for X in T.basis:
            assert g.contains(element(g.space, X=X)), name


def test_g1_full_at_n1_is_the_whole_parabolic():
    g = family_g(FamilySpec("g1", n=1, m=1, h0="sp1", h_generators=SP1))
    assert g.dim == 14 == 7 + 4 * 1 + 1 * 3


def test_g6_with_B2():
    g = family_g(FamilySpec("g6", n=2, Lprime=[LprimeBlock(2, 0)]))
    assert g.dim == 6


def test_g7_at_n1():
    g = family_g(FamilySpec("g7", n=1, m=0))
    assert g.dim == 9
    # the a-slot and the Op(E) block carry the same imaginary unit
    for u in g.basis:
        if u.a:
            assert u.A == QMatrix(((u.a,),))


def test_g7_with_opposite_signs_is_not_closed(space1):
    gens = [element(space1, a=u, A=op(-u)) for u in (I, J, K)]
    gens += [element(space1, X=QVector.basis(1, 0, u)) for u in (I, J, K)]
    gens += [element(space1, b=u) for u in (I, J, K)]
    with pytest.raises(AlgebraError):
        Subalgebra(space1, gens)


@pytest.mark.parametrize("spec,clause", [
    (FamilySpec("g1", n=2, m=1, h0="sp1"), "if m < n then h0 = Ri"),
    (FamilySpec("g1", n=1, m=1, h0="0"), "h0 = Ri or h0 = sp1"),
    (FamilySpec("g2", n=1, m=1, h_generators=SP1, phi_values=[I, I, I]), "homomorphism"),
    (FamilySpec("g2", n=1, m=1, h_generators=[op(I)], phi_values=[ONE]), "Im H"),
    (FamilySpec("g3", n=1, m=1, h0="sp1", h_generators=SP1, varphi_values=[1, 0, 0]), "vanish on h'"),
    (FamilySpec("g5", n=1, m=1, alpha=Fraction(0)), "alpha != 0"),
    (FamilySpec("g6", n=2, Lprime=[LprimeBlock(1, 0), LprimeBlock(1, 1)]), "l >= 2"),
    (FamilySpec("g6", n=3, Lprime=[LprimeBlock(2, 0)]), "partition"),
    (FamilySpec("g8", n=2, m=1, h_generators=[op(I)], phi_values=[-I]), "surjective onto sp1"),
    (FamilySpec("g9", n=2, m=1, m2=1, k=1, h_generators=[op(I)], psi_values=[QVector((ZERO, J))],
                U=[QVector((ZERO, I))]), "psi takes values in U"),
    (FamilySpec("g4", n=1, m=1, h0="Ri"), "h0 is not a parameter"),
    (FamilySpec("g10", n=1), "unknown family"),
])
def test_side_conditions_name_the_clause(spec, clause):
    with pytest.raises(FamilyError) as info:
        family_g(spec)
    assert clause in str(info.value)


def test_subcase_conditions_are_recorded_not_enforced():
    g = family_g(FamilySpec("g2", n=1, m=1, h_generators=[op(I)], phi_values=[ZERO]))
    assert "g2: phi is non-zero" in g.compliance.failures()


def test_g8_with_general_gram():
    from holonomy_lab.hermitian import gram_from_forms
    G = gram_from_forms(2, m=1, eta_rest=[[2]])
    spec = FamilySpec("g8", n=2, m=1, h_generators=sp_basis(1), phi_values=[-I, -J, -K], G=G)
    assert family_g(spec).dim == 13


def test_lemma1_algebra(space1, space2):
    assert lemma1_algebra(space1).dim == 8
    assert lemma1_algebra(space2).dim == 12
    assert lemma1_algebra(space1).projection_dims()["H"] == 1


@pytest.mark.parametrize("alpha,beta", [(1, 0), (0, 1), (2, -3), (Fraction(1, 2), 1)])
def test_complex_line_algebra_closes(space1, alpha, beta):
    g = complex_line_algebra(space1, alpha, beta)
    assert g.dim == 5 and g.projection_dims()["H"] == 2


def test_complex_line_with_plus_i_does_not_close(space1):
    gens = [element(space1, a=ONE, b=J), element(space1, a=I, b=K)]
    gens += [element(space1, X=QVector.basis(1, 0, u)) for u in (ONE, I)]
    gens.append(element(space1, b=I))
    with pytest.raises(AlgebraError):
        Subalgebra(space1, gens)


def test_complex_line_needs_a_direction(space1):
    with pytest.raises(FamilyError):
        complex_line_algebra(space1, 0, 0)
    assert sorted(COUNTEREXAMPLES) == ["complex-line", "lemma1"]
