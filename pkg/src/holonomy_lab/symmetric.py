"""Symmetric pairs ``(g, R)``: ``R`` spans ``g`` and ``xi . R = 0`` for ``xi`` in ``g``.

``(xi . R)(x, y) = [xi, R(x, y)] - R(xi x, y) - R(x, xi y)``.

Besides the test itself this module holds the ``n = 2`` exemplar, the
change of the null vector ``q`` that removes the ``D``-part of a tensor,
and the exhaustive ``n = 1`` computation showing that no translation data
survive there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import linalg
from .curvature import (CurvatureError, CurvatureTensor, bianchi_defect, solve_R,
                        tensor_in_algebra)
from .families import FamilySpec, LprimeBlock, family_g
from .hermitian import HermitianSpace, RealSubspace, build_B, complex_block, imaginary_block, make_space
from .parabolic import ParabolicElement, Subalgebra, element, element_from_matrix
from .prop1 import Prop1Params, derived_components, prop1_construct
from .quat import (I, J, K, ONE, UNITS, ZERO, QMatrix, QVector, Quat, exact_matrix, is_zero,
                   mdot, zeros)

HALF = Fraction(1, 2)

#: Gram matrix of the n = 2 exemplar.
EXEMPLAR_G = QMatrix(((ONE, K * Fraction(-1, 2)), (K * Fraction(1, 2), ONE)))


class SymmetricPairError(ValueError):
    """``R`` is not a curvature tensor of ``g``."""


def _as_matrix(xi) -> np.ndarray:
    return xi.matrix() if isinstance(xi, ParabolicElement) else xi


def act_on_R(xi: Union[ParabolicElement, np.ndarray], R: CurvatureTensor) -> CurvatureTensor:
    """``xi . R`` on every basis bivector."""
    M = _as_matrix(xi)
    N = R.N
    if M.shape != (N, N):
        raise CurvatureError("xi and R live in different dimensions")
    cols = [[(k, M[k, i]) for k in range(N) if M[k, i]] for i in range(N)]
    out = {}
    for I_ in range(N):
        for J_ in range(I_ + 1, N):
            V = R.value(I_, J_)
            acc = mdot(M, V) - mdot(V, M) if not is_zero(V) else zeros(N)
            for k, c in cols[I_]:
                acc = acc - R.value(k, J_) * c
            for k, c in cols[J_]:
                acc = acc - R.value(I_, k) * c
            out[(I_, J_)] = acc
    return CurvatureTensor(N, out)


def image_span_rank(R: CurvatureTensor) -> int:
    return linalg.rank([list(M.flat) for M in R.images()]) if R.images() else 0


# ---------------------------------------------------------------------------
# reading a parabolic tensor back into its blocks

@dataclass
class Blocks:
    """The Prop-1 blocks read off a tensor with values in ``sp(1,n+1)_{Hp}``."""

    C: List[List[Quat]]
    A: List[List[QMatrix]]
    S: List[List[QVector]]
    D: List[List[Quat]]
    B: List[List[Quat]]
    P0: Dict[int, QMatrix]
    T0: Dict[int, QVector]
    theta0: Dict[int, Quat]
    Rprime: Dict[Tuple[int, int], QMatrix]
    L: Dict[Tuple[int, int], QVector]
    tau: Dict[Tuple[int, int], Quat]


def read_blocks(R: CurvatureTensor, space: HermitianSpace) -> Blocks:
    n = space.n
    q0 = space.q_index()
    el = lambda i, j: element_from_matrix(space, R.value(i, j))
    C = [[ZERO] * 4 for _ in range(4)]
    D = [[ZERO] * 4 for _ in range(4)]
    A = [[QMatrix.zeros(n)] * 4 for _ in range(4)]
    S = [[QVector.zeros(n)] * 4 for _ in range(4)]
    B = [[el(r, q0 + s).b for s in range(4)] for r in range(4)]
    for r in range(4):
        for s in range(4):
            if r != s:
                u = el(q0 + r, q0 + s)
                C[r][s], A[r][s], S[r][s], D[r][s] = u.a, u.A, u.X, u.b
    P0, T0, theta0 = {}, {}, {}
    for x in range(4 * n):
        u = el(q0, 4 + x)
        P0[x], T0[x], theta0[x] = u.A, u.X, u.b
    Rp, L, tau = {}, {}, {}
    for x in range(4 * n):
        for y in range(x + 1, 4 * n):
            u = el(4 + x, 4 + y)
            Rp[(x, y)], L[(x, y)], tau[(x, y)] = u.A, u.X, u.b
    return Blocks(C, A, S, D, B, P0, T0, theta0, Rp, L, tau)


# ---------------------------------------------------------------------------
# the symmetric-pair test

@dataclass
class SymmetricPair:
    g: Subalgebra
    R: CurvatureTensor

    @property
    def space(self) -> HermitianSpace:
        return self.g.space


@dataclass
class Certificate:
    """Why a pair is (or is not) symmetric."""

    dim_g: int
    span_dim: int
    span_ok: bool
    violations: List[Tuple[int, int, int]]
    violation_count: int
    eliminations: Dict[str, bool] = field(default_factory=dict)

    @property
    def symmetric(self) -> bool:
        return self.span_ok and self.violation_count == 0

    def to_json(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "dim_g": self.dim_g,
            "span_dim": self.span_dim,
            "span_ok": self.span_ok,
            "violation_count": self.violation_count,
            "violations": [{"xi": a, "x": b, "y": c} for a, b, c in self.violations],
            "eliminations": dict(self.eliminations),
        }


def _eliminations(g: Subalgebra, R: CurvatureTensor) -> Dict[str, bool]:
    """Consequences a symmetric pair must satisfy, each checked on ``(g, R)``.

    A pair with ``pr_H g != 0`` cannot be symmetric because the ``H``-part
    of ``xi . R`` forces ``C = 0``.  Once ``pr_H g = 0`` the ``C, B``
    blocks vanish, ``xi = (0,0,Y,0)`` kills ``R'`` and ``L`` (hence ``P0``),
    and ``A_0s = 0``.  Every entry is True for a symmetric pair.
    """
    space = g.space
    b = read_blocks(R, space)
    prH = g.projection_dims()["H"]
    all_zero = lambda rows: all(not x for row in rows for x in row)
    return {
        "pr_H g = 0": prH == 0,
        "C = 0": all_zero(b.C),
        "B = 0": all_zero(b.B),
        "R' = 0": all(not v for v in b.Rprime.values()),
        "L = 0": all(not v for v in b.L.values()),
        "P0 = 0": all(not v for v in b.P0.values()),
        "A_0s = 0": all(not b.A[0][s] for s in range(1, 4)),
    }


def is_symmetric_pair(g: Subalgebra, R: CurvatureTensor, max_violations: int = 10) -> Tuple[bool, Certificate]:
    """Exact test of the symmetric-pair conditions with a certificate.

    Raises :class:`SymmetricPairError` when ``R`` is not in ``R(g)``.
    """
    gens = g.matrices()
    if not tensor_in_algebra(R, gens):
        raise SymmetricPairError("R takes values outside g")
    if bianchi_defect(R) is not None:
        raise SymmetricPairError("R violates the Bianchi identity")
    span = image_span_rank(R)
    violations: List[Tuple[int, int, int]] = []
    count = 0
    for a, xi in enumerate(g.basis):
        T = act_on_R(xi, R)
        for (x, y) in sorted(T.values):
            count += 1
            if len(violations) < max_violations:
                violations.append((a, x, y))
    cert = Certificate(g.dim, span, span == g.dim, violations, count,
                       _eliminations(g, R) if g.space.N == R.N else {})
    return cert.symmetric, cert


# ---------------------------------------------------------------------------
# the n = 2 exemplar

def exemplar_space() -> HermitianSpace:
    return make_space(2, EXEMPLAR_G)


def exemplar_Lprime(space: Optional[HermitianSpace] = None) -> RealSubspace:
    """``span_R{e1, e2, j e1 + i e2}``."""
    return build_B(2, n=2, swapped=True)


def exemplar_spec() -> FamilySpec:
    return FamilySpec("g6", n=2, m=0, Lprime=[LprimeBlock(2, 0, swapped=True)], G=EXEMPLAR_G,
                      label="exemplar: L' = span{e1, e2, j e1 + i e2}")


def exemplar_params(n: int = 2) -> Prop1Params:
    return Prop1Params(S01=QVector.basis(n, 0), S02=-QVector.basis(n, 1))


def exemplar_n2() -> SymmetricPair:
    space = exemplar_space()
    g = family_g(exemplar_spec(), space)
    R = prop1_construct(exemplar_params(), space)
    return SymmetricPair(g, R)


# ---------------------------------------------------------------------------
# changing q

def literal_q_prime_isotropic(space: HermitianSpace, X: QVector) -> bool:
    """Whether ``q' = -1/2 p + X + q`` is null: ``g(q', q') = g(X, X) - 1``."""
    return space.g(X, X) == ONE


def q_prime(space: HermitianSpace, X: QVector) -> QVector:
    """``q' = q + X - 1/2 g(X, X) p`` in coordinates ``(p, e, q)``: null, ``g(p, q') = 1``."""
    c = space.g(X, X) * (-HALF)
    return QVector((c,) + X.coords + (ONE,))


def d_prime(params: Prop1Params, space: HermitianSpace, X: QVector) -> List[List[Quat]]:
    """``D'_rs = D_rs - theta_s(I_r X) + theta_r(I_s X) - g(X, S_rs) + g(S_rs, X)``."""
    comp = derived_components(params, space)
    g = space.g
    out = [[ZERO] * 4 for _ in range(4)]
    for r in range(4):
        for s in range(4):
            if r == s:
                continue
            Srs = comp.S[r][s]
            out[r][s] = (comp.D[r][s] - comp.theta(s, X.scale(UNITS[r]))
                         + comp.theta(r, X.scale(UNITS[s])) - g(X, Srs) + g(Srs, X))
    return out


@dataclass
class BaseChange:
    X: QVector
    D_prime: List[List[Quat]]
    literal_isotropic: bool

    @property
    def d01_d02_zero(self) -> bool:
        return not self.D_prime[0][1] and not self.D_prime[0][2]

    @property
    def all_zero(self) -> bool:
        return all(not x for row in self.D_prime for x in row)


def change_base_q(params: Prop1Params, space: HermitianSpace, X: Optional[QVector] = None) -> BaseChange:
    """``D'`` after replacing ``q`` by ``q'``; with ``X=None`` solve for ``D'_01 = D'_02 = 0``."""
    if X is None:
        X = solve_q_shift(params, space)
        if X is None:
            raise ValueError("no X in H^n makes D'_01 and D'_02 vanish")
    return BaseChange(X, d_prime(params, space, X), literal_q_prime_isotropic(space, X))


def solve_q_shift(params: Prop1Params, space: HermitianSpace) -> Optional[QVector]:
    """Exact solve of ``D'_01 = D'_02 = 0`` over ``X`` in ``R^{4n}``.

    ``D'`` is affine in ``X``: columns are ``D'(e_x) - D'(0)``.
    """
    n = space.n
    base = d_prime(params, space, QVector.zeros(n))
    rhs = [-c for rs in ((0, 1), (0, 2)) for c in base[rs[0]][rs[1]].coeffs]
    cols = []
    for x in range(4 * n):
        v = [Fraction(0)] * (4 * n)
        v[x] = Fraction(1)
        Dx = d_prime(params, space, QVector.from_real(v))
        cols.append([c - c0 for rs in ((0, 1), (0, 2))
                     for c, c0 in zip(Dx[rs[0]][rs[1]].coeffs, base[rs[0]][rs[1]].coeffs)])
    rows = [[cols[x][r] for x in range(4 * n)] for r in range(len(rhs))]
    sol = linalg.solve(rows, rhs)
    return None if sol is None else QVector.from_real(sol)


def new_basis_matrix(space: HermitianSpace, X: QVector) -> np.ndarray:
    """Columns: ``I_a p``, ``I_a e'_t``, ``I_a q'`` in old coordinates, with
    ``e'_t = e_t - g(e_t, X) p`` so that the Gram matrix is unchanged."""
    n = space.n
    cols = []
    p = QVector.basis(n + 2, 0)
    cols += [p.scale(u) for u in UNITS]
    for t in range(n):
        et = QVector.basis(n, t)
        c = space.g(et, X)
        e_new = QVector((-c,) + et.coords + (ZERO,))
        cols += [e_new.scale(u) for u in UNITS]
    qn = q_prime(space, X)
    cols += [qn.scale(u) for u in UNITS]
    M = zeros(space.N)
    for j, v in enumerate(cols):
        for i, c in enumerate(v.to_real()):
            M[i, j] = c
    return M


def transform_tensor(R: CurvatureTensor, P: np.ndarray) -> CurvatureTensor:
    """``R`` written in the basis given by the columns of ``P``."""
    N = R.N
    Pinv = exact_matrix(linalg.inverse(P.tolist()))
    out = {}
    for a in range(N):
        for b in range(a + 1, N):
            acc = zeros(N)
            for k in range(N):
                if not P[k, a]:
                    continue
                for l in range(N):
                    if P[l, b] and k != l:
                        acc = acc + R.value(k, l) * (P[k, a] * P[l, b])
            if not is_zero(acc):
                out[(a, b)] = mdot(mdot(Pinv, acc), P)
    return CurvatureTensor(N, out)


def d_prime_by_conjugation(R: CurvatureTensor, space: HermitianSpace, X: QVector) -> List[List[Quat]]:
    """Independent route to ``D'``: rewrite ``R`` in the new basis and read
    the ``Im H``-slot of ``R(I_r q', I_s q')``."""
    T = transform_tensor(R, new_basis_matrix(space, X))
    q0 = space.q_index()
    out = [[ZERO] * 4 for _ in range(4)]
    for r in range(4):
        for s in range(4):
            if r != s:
                out[r][s] = element_from_matrix(space, T.value(q0 + r, q0 + s)).b
    return out


# ---------------------------------------------------------------------------
# n = 1: nothing survives

def _annihilator(L: RealSubspace) -> List[List[Fraction]]:
    """Rows ``w`` with ``w . v = 0`` exactly for ``v`` in ``L``."""
    n4 = 4 * L.ambient_n
    if not L.basis:
        return [[Fraction(int(i == j)) for j in range(n4)] for i in range(n4)]
    return linalg.nullspace(L.real_basis(), n4)


def esymS_solutions(space: HermitianSpace, L: RealSubspace) -> List[Tuple[QVector, QVector]]:
    """All ``(S01, S02)`` with ``S01, S02, S03`` in ``L`` satisfying, for every
    ``Y`` in a basis of ``L`` and ``s = 1, 2, 3``,
    ``2 Im g(Y, S_0s) = theta_0(I_s Y) - theta_s(Y)``.

    Unknowns are the ``8n`` real coordinates of ``(S01, S02)``; the result is
    an exact basis of the solution space.
    """
    n = space.n
    nv = 8 * n

    def residuals(S01: QVector, S02: QVector) -> List[Fraction]:
        comp = derived_components(Prop1Params(S01=S01, S02=S02), space)
        out = []
        ann = _annihilator(L)
        for s in (1, 2, 3):
            for w in ann:
                out.append(sum((a * b for a, b in zip(w, comp.S[0][s].to_real())), Fraction(0)))
        for Y in L.basis:
            for s in (1, 2, 3):
                lhs = space.g(Y, comp.S[0][s]).im() * 2
                rhs = comp.theta(0, Y.scale(UNITS[s])) - comp.theta(s, Y)
                out += list((lhs - rhs).coeffs)
        return out

    cols = []
    for v in range(nv):
        vec = [Fraction(int(i == v)) for i in range(nv)]
        cols.append(residuals(QVector.from_real(vec[:4 * n]), QVector.from_real(vec[4 * n:])))
    rows = [[cols[v][r] for v in range(nv)] for r in range(len(cols[0]))]
    ker = linalg.nullspace(rows, nv)
    return [(QVector.from_real(k[:4 * n]), QVector.from_real(k[4 * n:])) for k in ker]


def translation_algebra(space: HermitianSpace, L: RealSubspace, name: str = "") -> Subalgebra:
    """``L + Im H`` (bracket-closed for every real ``L``)."""
    gens = [element(space, X=X) for X in L.basis] + [element(space, b=u) for u in (I, J, K)]
    return Subalgebra(space, gens, name=name or "L + Im H")


@dataclass
class InvariantTensors:
    """``{R in R(g) | xi . R = 0 for all xi in g}`` with its ``S``-blocks."""

    dim_R: int
    dim_invariant: int
    S_blocks: List[List[List[QVector]]]

    @property
    def S_zero(self) -> bool:
        return all(not v for blocks in self.S_blocks for row in blocks for v in row)


def invariant_tensors(g: Subalgebra) -> InvariantTensors:
    """Solve ``xi . R = 0`` as linear equations on the coordinates of ``R(g)``."""
    space = g.space
    Rg = solve_R(g)
    basis = Rg.tensors()
    d = len(basis)
    N = space.N
    ech = linalg.SparseEchelon(d)
    if d:
        for xi in g.basis:
            images = [act_on_R(xi, T).flat() for T in basis]
            keys = sorted(set().union(*images))
            for key in keys:
                ech.add({c: img[key] for c, img in enumerate(images) if key in img})
    ker = ech.nullspace() if d else []
    S_blocks = []
    for kvec in ker:
        vals = {}
        for c, v in kvec.items():
            for p, M in basis[c].values.items():
                vals[p] = vals.get(p, zeros(N)) + M * v
        S_blocks.append(read_blocks(CurvatureTensor(N, vals), space).S)
    return InvariantTensors(d, len(ker), S_blocks)


def n1_subspaces(space: Optional[HermitianSpace] = None) -> Dict[str, RealSubspace]:
    """The two candidate translation parts at ``n = 1``: ``Im H`` and ``C``."""
    return {"ImH": imaginary_block(1, 0, 1), "C": complex_block(1, 0, 1)}
