"""Parametric form of every curvature tensor of ``sp(1,n+1)_{Hp}``.

A tensor ``R`` in ``R(sp(1,n+1)_{Hp})`` is determined by a short list of
free data (:class:`Prop1Params`).  Writing ``u_0..u_3 = 1, i, j, k`` and
``I_r p = u_r p``, the non-zero values are ::

    R(I_r p, I_s q) = (0, 0, 0, B_rs)
    R(I_s q, X)     = (0, P_s(X), T_s(X), theta_s(X))
    R(X, Y)         = (0, R'(X, Y), L(X, Y), tau(X, Y))
    R(I_r q, I_s q) = (C_rs, A_rs, S_rs, D_rs)

for ``X, Y`` in ``R^{4n}``; every symbol not among the free data is a
fixed linear expression in them (see :func:`derived_components`).

Quaternions act on ``H^n`` from the left (the complex structures), while
``sp(n)`` matrices act through ``Op``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .curvature import (CurvatureError, CurvatureTensor, PTensor, bianchi_defect,
                        solve_P, solve_R)
from .hermitian import HermitianSpace
from .parabolic import ParabolicElement, element, sp_basis
from .quat import (UNITS, ZERO, QMatrix, QVector, Quat, is_zero, left_mult, mdot,
                   realify, zeros)

HALF = Fraction(1, 2)


def unrealify(M: np.ndarray, n: int) -> QMatrix:
    """Inverse of :func:`~holonomy_lab.quat.realify` on H-linear real matrices.

    Raises :class:`ValueError` when ``M`` does not commute with the left
    multiplications by ``i`` and ``j``.
    """
    if M.shape != (4 * n, 4 * n):
        raise ValueError("wrong shape for an n x n quaternionic matrix")
    for u in UNITS[1:3]:
        Lu = left_mult(u, n)
        if not is_zero(mdot(M, Lu) - mdot(Lu, M)):
            raise ValueError("matrix is not H-linear")
    entries = tuple(tuple(Quat(*(M[4 * s + c, 4 * t] for c in range(4))) for t in range(n))
                    for s in range(n))
    return QMatrix(entries)


def _real_basis_vector(n: int, x: int) -> QVector:
    t, alpha = divmod(x, 4)
    return QVector.basis(n, t, UNITS[alpha])


def _apply_real(M: np.ndarray, X: QVector) -> QVector:
    v = X.to_real()
    out = [sum((M[r, c] * v[c] for c in range(len(v)) if v[c]), Fraction(0)) for r in range(len(v))]
    return QVector.from_real(out)


@dataclass
class Prop1Params:
    """Free data of a curvature tensor of ``sp(1,n+1)_{Hp}``.

    ``Rprime`` is a tensor on ``R^{4n}`` with values in ``sp(n)`` (real
    4n x 4n matrices) and ``P0`` a :class:`PTensor` of ``P(sp(n))``.
    ``None`` means zero for every field.
    """

    C01: Quat = ZERO
    C02: Quat = ZERO
    A01: Optional[QMatrix] = None
    A02: Optional[QMatrix] = None
    A03: Optional[QMatrix] = None
    S01: Optional[QVector] = None
    S02: Optional[QVector] = None
    Rprime: Optional[CurvatureTensor] = None
    P0: Optional[PTensor] = None
    d: Tuple = (0, 0, 0, 0, 0)

    def filled(self, n: int) -> "Prop1Params":
        """Copy with every ``None`` replaced by the zero of the right shape."""
        zA = QMatrix.zeros(n)
        zX = QVector.zeros(n)
        return Prop1Params(
            Quat.coerce(self.C01), Quat.coerce(self.C02),
            *(zA if A is None else A for A in (self.A01, self.A02, self.A03)),
            *(zX if X is None else X for X in (self.S01, self.S02)),
            self.Rprime if self.Rprime is not None else CurvatureTensor(4 * n, {}),
            self.P0 if self.P0 is not None else PTensor(4 * n, {}),
            tuple(Fraction(v) for v in self.d),
        )


def validate_params(params: Prop1Params, space: HermitianSpace) -> None:
    """Raise :class:`CurvatureError` unless ``A0s`` lie in ``sp(n)``, ``R'`` in
    ``R(sp(n))`` and ``P0`` in ``P(sp(n))``."""
    from .parabolic import sp_condition
    n = space.n
    p = params.filled(n)
    if len(p.d) != 5:
        raise CurvatureError("d must have exactly five entries")
    for name in ("A01", "A02", "A03"):
        A = getattr(p, name)
        if A.rows != n or sp_condition(A, space.G):
            raise CurvatureError(f"{name} is not in sp({n})")
    for name in ("S01", "S02"):
        if getattr(p, name).dim != n:
            raise CurvatureError(f"{name} must lie in H^{n}")
    eta = space.eta_n
    if p.Rprime.N != 4 * n:
        raise CurvatureError("R' must act on R^{4n}")
    for M in p.Rprime.images():
        _check_spn(M, n, eta, "R'")
    if bianchi_defect(p.Rprime) is not None:
        raise CurvatureError("R' violates the Bianchi identity")
    if p.P0.m != 4 * n:
        raise CurvatureError("P0 must act on R^{4n}")
    for x in range(4 * n):
        _check_spn(p.P0.value(x), n, eta, "P0")
    if _p_cyclic_defect(p.P0, eta) is not None:
        raise CurvatureError("P0 violates the cyclic condition")


def _check_spn(M: np.ndarray, n: int, eta: np.ndarray, name: str) -> None:
    if not is_zero(mdot(M.T, eta) + mdot(eta, M)):
        raise CurvatureError(f"{name} has a value that is not eta-skew")
    try:
        unrealify(M, n)
    except ValueError:
        raise CurvatureError(f"{name} has a value that is not H-linear") from None


def _p_cyclic_defect(P: PTensor, eta: np.ndarray):
    import itertools
    m = P.m
    EP = [mdot(eta, P.value(x)) for x in range(m)]
    for x, y, z in itertools.combinations(range(m), 3):
        if EP[x][z, y] + EP[y][x, z] + EP[z][y, x] != 0:
            return (x, y, z)
    return None


# ---------------------------------------------------------------------------
# derived components

@dataclass
class Components:
    """All quaternionic symbols of the parametrization, indexed ``0..3``."""

    C: List[List[Quat]]
    B: List[List[Quat]]
    D: List[List[Quat]]
    A: List[List[QMatrix]]
    S: List[List[QVector]]
    T0: np.ndarray
    T: List[np.ndarray]
    params: Prop1Params = field(repr=False)
    space: HermitianSpace = field(repr=False)

    def P(self, s: int, x: int) -> np.ndarray:
        """``P_s(e_x) = -P_0(I_s e_x)`` as a real matrix."""
        P0 = self.params.P0
        if s == 0:
            return P0.value(x)
        Is = left_mult(UNITS[s], self.space.n)
        return -P0.apply_vector(list(Is[:, x]))

    def L(self, x: int, y: int) -> QVector:
        """``L(X, Y) = P_0(Y) X - P_0(X) Y`` on real basis vectors."""
        n = self.space.n
        P0 = self.params.P0
        X, Y = _real_basis_vector(n, x), _real_basis_vector(n, y)
        return _apply_real(P0.value(y), X) - _apply_real(P0.value(x), Y)

    def tau(self, X: QVector, Y: QVector) -> Quat:
        g = self.space.g
        return g(Y, _apply_real(self.T0, X)) - g(X, _apply_real(self.T0, Y))

    def theta(self, s: int, X: QVector) -> Quat:
        g = self.space.g
        S = self.S
        theta0 = (UNITS[1] * g(X, S[0][1]) + UNITS[2] * g(X, S[0][2])
                  + UNITS[3] * g(X, S[0][3])) * HALF
        if s == 0:
            return theta0
        return g(X, S[0][s]) + UNITS[s] * theta0


def derived_components(params: Prop1Params, space: HermitianSpace) -> Components:
    n = space.n
    p = params.filled(n)
    u = UNITS
    # C: C_0s given for s = 1, 2; C_rs = C_0r u_s - C_0s u_r for r, s != 0
    C0 = [ZERO, p.C01, p.C02, p.C02 * u[1] - p.C01 * u[2]]
    C = [[ZERO] * 4 for _ in range(4)]
    for s in range(1, 4):
        C[0][s], C[s][0] = C0[s], -C0[s]
    for r in range(1, 4):
        for s in range(1, 4):
            C[r][s] = C0[r] * u[s] - C0[s] * u[r]
    # B_r0 = 1/2 (i u_r C01 + j u_r C02 + k u_r C03), B_rs = u_r C_0s + u_s B_r0
    B = [[ZERO] * 4 for _ in range(4)]
    for r in range(4):
        B[r][0] = (u[1] * u[r] * C0[1] + u[2] * u[r] * C0[2] + u[3] * u[r] * C0[3]) * HALF
        for s in range(1, 4):
            B[r][s] = u[r] * C0[s] + u[s] * B[r][0]
    # D
    d1, d2, d3, d4, d5 = p.d
    D01 = Quat(0, d1, d2, d3)
    D02 = Quat(0, d2, d4, d5)
    D0 = [ZERO, D01, D02, u[2] * D01 - u[1] * D02]
    D = [[u[r] * D0[s] - u[s] * D0[r] for s in range(4)] for r in range(4)]
    # S
    S0 = [QVector.zeros(n), p.S01, p.S02, p.S01.scale(u[2]) - p.S02.scale(u[1])]
    S = [[S0[s].scale(u[r]) - S0[r].scale(u[s]) for s in range(4)] for r in range(4)]
    # A
    zA = QMatrix.zeros(n)
    A = [[zA] * 4 for _ in range(4)]
    A0 = [zA, p.A01, p.A02, p.A03]
    for s in range(1, 4):
        A[0][s], A[s][0] = A0[s], -A0[s]
    A[2][3], A[3][2] = -A0[1], A0[1]
    A[1][3], A[3][1] = A0[2], -A0[2]
    A[1][2], A[2][1] = -A0[3], A0[3]
    # T_0 = -1/2 sum I_a A_0a,  T_s = I_s T_0 - A_0s
    T0 = zeros(4 * n)
    for a in range(1, 4):
        T0 = T0 + mdot(left_mult(u[a], n), realify(A0[a]))
    T0 = T0 * (-HALF)
    T = [T0] + [mdot(left_mult(u[s], n), T0) - realify(A0[s]) for s in range(1, 4)]
    return Components(C, B, D, A, S, T0, T, p, space)


def prop1_elements(params: Prop1Params, space: HermitianSpace) -> Dict[Tuple[int, int], ParabolicElement]:
    """Values on basis bivectors ``(I, J)``, ``I < J``, as ``(a, A, X, b)`` tuples."""
    n = space.n
    comp = derived_components(params, space)
    p = comp.params
    q0 = space.q_index()
    out: Dict[Tuple[int, int], ParabolicElement] = {}

    def put(i, j, e):
        if i > j:
            i, j, e = j, i, -e
        if e:
            out[(i, j)] = e

    for r in range(4):
        for s in range(4):
            put(r, q0 + s, element(space, b=comp.B[r][s]))
    for s in range(4):
        for x in range(4 * n):
            X = _real_basis_vector(n, x)
            Ps = unrealify(comp.P(s, x), n)
            Ts = _apply_real(comp.T[s], X)
            put(q0 + s, 4 + x, element(space, A=Ps, X=Ts, b=comp.theta(s, X)))
    for x in range(4 * n):
        X = _real_basis_vector(n, x)
        for y in range(x + 1, 4 * n):
            Y = _real_basis_vector(n, y)
            Rp = unrealify(p.Rprime.value(x, y), n)
            put(4 + x, 4 + y, element(space, A=Rp, X=comp.L(x, y), b=comp.tau(X, Y)))
    for r in range(4):
        for s in range(r + 1, 4):
            put(q0 + r, q0 + s, element(space, comp.C[r][s], comp.A[r][s], comp.S[r][s], comp.D[r][s]))
    return out


def prop1_construct(params: Prop1Params, space: HermitianSpace, validate: bool = True) -> CurvatureTensor:
    """The curvature tensor determined by ``params`` (realified values)."""
    if validate:
        validate_params(params, space)
    elems = prop1_elements(params, space)
    return CurvatureTensor(space.N, {k: e.matrix() for k, e in elems.items()}, elements=elems)


# ---------------------------------------------------------------------------
# the contraction identities between the blocks

def _eta_pq(c: Quat, d: Quat) -> Fraction:
    """``eta(c p, d q) = Re(c conj(d))``."""
    return (c * d.conj()).re()


def lp_defects(params: Prop1Params, space: HermitianSpace) -> Dict[str, Optional[tuple]]:
    """Check the four contraction identities linking ``L, tau, theta, B`` to
    ``P0, A, S, C``; each entry is None or the first violating index tuple."""
    n = space.n
    comp = derived_components(params, space)
    P0 = comp.params.P0
    eta = space.eta_n
    u = UNITS
    real = [_real_basis_vector(n, x) for x in range(4 * n)]
    out: Dict[str, Optional[tuple]] = {"L": None, "tau": None, "theta": None, "B": None}

    def eta_vec(X: QVector, Y: QVector) -> Fraction:
        return space.g(X, Y).re()

    for x in range(4 * n):
        Px = P0.value(x)
        for y in range(4 * n):
            for z in range(4 * n):
                lhs = eta_vec(comp.L(y, z), real[x])
                rhs = Fraction(eta[z, :].dot(Px[:, y]))
                if lhs != rhs and out["L"] is None:
                    out["L"] = (x, y, z)
    for r in range(4):
        for s in range(4):
            Ars = realify(comp.A[r][s])
            for x in range(4 * n):
                for y in range(4 * n):
                    lhs = _eta_pq(u[r] * comp.tau(real[x], real[y]), u[s])
                    rhs = Fraction(eta[y, :].dot(Ars[:, x]))
                    if lhs != rhs and out["tau"] is None:
                        out["tau"] = (r, s, x, y)
    for r in range(4):
        for s in range(4):
            for t in range(4):
                for x in range(4 * n):
                    lhs = _eta_pq(u[r] * comp.theta(s, real[x]), u[t])
                    rhs = eta_vec(comp.S[r][t].scale(u[s]), real[x])
                    if lhs != rhs and out["theta"] is None:
                        out["theta"] = (r, s, t, x)
    for r in range(4):
        for s in range(4):
            for t in range(4):
                for t1 in range(4):
                    lhs = _eta_pq(u[t] * comp.B[r][s], u[t1])
                    rhs = _eta_pq(u[r] * comp.C[t][t1], u[s])
                    if lhs != rhs and out["B"] is None:
                        out["B"] = (r, s, t, t1)
    return out


# ---------------------------------------------------------------------------
# the parameter map and its rank

def spn_generators(space: HermitianSpace) -> List[np.ndarray]:
    return [realify(A) for A in sp_basis(space.n, space.G)]


def parameter_basis(space: HermitianSpace) -> List[Tuple[str, Prop1Params]]:
    """One labelled :class:`Prop1Params` per free real parameter."""
    n = space.n
    out: List[Tuple[str, Prop1Params]] = []
    for name in ("C01", "C02"):
        for a, unit in enumerate(UNITS):
            out.append((f"{name}[{a}]", Prop1Params(**{name: unit})))
    spn = sp_basis(n, space.G)
    for name in ("A01", "A02", "A03"):
        for k, A in enumerate(spn):
            out.append((f"{name}[{k}]", Prop1Params(**{name: A})))
    for name in ("S01", "S02"):
        for t in range(n):
            for a, unit in enumerate(UNITS):
                out.append((f"{name}[{t},{a}]", Prop1Params(**{name: QVector.basis(n, t, unit)})))
    gens = spn_generators(space)
    for k, T in enumerate(solve_R(gens, space.eta_n).tensors()):
        out.append((f"Rprime[{k}]", Prop1Params(Rprime=T)))
    for k, P in enumerate(solve_P(gens, space.eta_n).tensors()):
        out.append((f"P0[{k}]", Prop1Params(P0=P)))
    for a in range(5):
        d = [0] * 5
        d[a] = 1
        out.append((f"d{a + 1}", Prop1Params(d=tuple(d))))
    return out


def parameter_count(n: int, dim_spn: int, dim_R_spn: int, dim_P_spn: int) -> int:
    """``8 + 5 + 3 dim sp(n) + 8n + dim R(sp(n)) + dim P(sp(n))``."""
    return 8 + 5 + 3 * dim_spn + 8 * n + dim_R_spn + dim_P_spn


@dataclass
class ParameterMapReport:
    n: int
    parameter_count: int
    rank: int
    dim_R_parabolic: int
    dim_spn: int
    dim_R_spn: int
    dim_P_spn: int
    all_in_R: bool

    @property
    def ok(self) -> bool:
        return (self.rank == self.parameter_count == self.dim_R_parabolic) and self.all_in_R

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def parameter_map_report(space: HermitianSpace) -> ParameterMapReport:
    """Rank of the parameter map against ``dim R(sp(1,n+1)_{Hp})``.

    Every constructed tensor is also checked for the Bianchi identity; since
    its values lie in the parabolic algebra by construction, a full rank
    equal to the solver's dimension means the parametrization is exhaustive
    and injective.
    """
    from .parabolic import full_parabolic
    basis = parameter_basis(space)
    labels = [lab for lab, _ in basis]
    dim_spn = sum(1 for lab in labels if lab.startswith("A01"))
    dim_R_spn = sum(1 for lab in labels if lab.startswith("Rprime"))
    dim_P_spn = sum(1 for lab in labels if lab.startswith("P0"))
    N = space.N
    ech = linalg.SparseEchelon(N * N * N * N)
    all_in = True
    for _, prm in basis:
        T = prop1_construct(prm, space, validate=False)
        if bianchi_defect(T) is not None:
            all_in = False
        ech.add(T.flat())
    dimR = solve_R(full_parabolic(space)).dim
    return ParameterMapReport(space.n, parameter_count(space.n, dim_spn, dim_R_spn, dim_P_spn),
                              ech.rank, dimR, dim_spn, dim_R_spn, dim_P_spn, all_in)
