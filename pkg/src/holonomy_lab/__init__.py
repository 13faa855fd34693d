"""Exact holonomy algebras of pseudo-hyper-Kähler spaces of signature (4, 4n+4).

Submodules
----------
quat        quaternions, quaternionic matrices, realification
hermitian   quaternionic Hermitian spaces and the real subspaces L(m, m1, m2, L')
parabolic   the parabolic algebra sp(1,n+1)_Hp, subalgebras, grading, f-projection
curvature   curvature tensors, R(g), P(h), the Berger test
prop1       explicit parametrization of R(sp(1,n+1)_Hp)
families    the nine Berger families g1..g9 and two non-Berger algebras
symmetric   symmetric pairs, the change of null vector, n = 1 non-existence
serialize   JSON round trips
cli         the ``holonomy-lab`` command
"""

__version__ = "0.1.0"

from .quat import Quat, QVector, QMatrix, realify
from .hermitian import HermitianSpace, RealSubspace, make_space, build_L, build_B, build_A, rho_closure
from .parabolic import ParabolicElement, Subalgebra, bracket, parabolic_basis, full_parabolic, f_projection
from .curvature import CurvatureTensor, solve_R, solve_P, berger_check, check_curvature_identities
from .prop1 import Prop1Params, prop1_construct
from .families import FamilySpec, LprimeBlock, family_g
from .symmetric import is_symmetric_pair, change_base_q

__all__ = [
    "Quat", "QVector", "QMatrix", "realify",
    "HermitianSpace", "RealSubspace", "make_space", "build_L", "build_B", "build_A", "rho_closure",
    "ParabolicElement", "Subalgebra", "bracket", "parabolic_basis", "full_parabolic", "f_projection",
    "CurvatureTensor", "solve_R", "solve_P", "berger_check", "check_curvature_identities",
    "Prop1Params", "prop1_construct",
    "FamilySpec", "LprimeBlock", "family_g",
    "is_symmetric_pair", "change_base_q",
]
