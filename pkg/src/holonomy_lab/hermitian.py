"""Pseudo-quaternionic-Hermitian spaces and real subspaces of ``H^n``.

The ambient space ``H^{1,n+1}`` has the adapted basis ``p, e_1..e_n, q``
with ``g(p,q) = 1``, ``g(p,p) = g(q,q) = 0`` and ``g(e_a, e_b) = G_ab``.
Its realification uses the basis ``p, I1p, I2p, I3p, e_1, I1e_1, ..., I3e_n,
q, I1q, I2q, I3q``, so index ``4*s + alpha`` is ``I_alpha`` applied to the
``s``-th quaternionic basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .quat import (I, J, K, ONE, UNITS, ZERO, QMatrix, QVector, Quat, exact_matrix,
                   left_mult, zeros)


class SpaceError(ValueError):
    """Invalid Gram data or subspace specification."""


def _hermitian_form_matrix(G: QMatrix) -> np.ndarray:
    """Real Gram matrix ``Re(u G_st conj(v))`` on ``R^{4m}``."""
    m = G.rows
    eta = zeros(4 * m)
    for s in range(m):
        for t in range(m):
            g = G[s, t]
            if not g:
                continue
            for a, u in enumerate(UNITS):
                ug = u * g
                for b, v in enumerate(UNITS):
                    eta[4 * s + a, 4 * t + b] = (ug * v.conj()).re()
    return eta


def _is_positive_definite(M: np.ndarray) -> bool:
    """Sylvester's criterion with exact leading minors (via elimination)."""
    n = M.shape[0]
    a = [[Fraction(M[i, j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


@dataclass(frozen=True, eq=False)
class HermitianSpace:
    """``H^{1,n+1}`` with positive definite Gram matrix ``G`` on ``H^n``."""

    n: int
    G: QMatrix
    eta: np.ndarray = field(repr=False)
    eta_n: np.ndarray = field(repr=False)
    I1: np.ndarray = field(repr=False)
    I2: np.ndarray = field(repr=False)
    I3: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        """Real dimension ``4n + 8``."""
        return 4 * self.n + 8

    @property
    def complex_structures(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.I1, self.I2, self.I3)

    @property
    def full_gram(self) -> QMatrix:
        n = self.n
        rows = [[ZERO] * (n + 2) for _ in range(n + 2)]
        rows[0][n + 1] = ONE
        rows[n + 1][0] = ONE
        for a in range(n):
            for b in range(n):
                rows[a + 1][b + 1] = self.G[a, b]
        return QMatrix(tuple(tuple(r) for r in rows))

    # -- forms ---------------------------------------------------------------
    def g(self, X: QVector, Y: QVector) -> Quat:
        """``g(X, Y) = sum X_s G_st conj(Y_t)`` on ``H^n``."""
        if X.dim != self.n or Y.dim != self.n:
            raise ValueError(f"expected vectors of H^{self.n}")
        return _form(X, self.G, Y)

    def g_full(self, X: QVector, Y: QVector) -> Quat:
        """The metric on ``H^{1,n+1}`` in coordinates ``(p, e_1..e_n, q)``."""
        if X.dim != self.n + 2 or Y.dim != self.n + 2:
            raise ValueError(f"expected vectors of H^(1,{self.n + 1})")
        return _form(X, self.full_gram, Y)

    def eta_form(self, x: Sequence, y: Sequence) -> Fraction:
        """``eta(x, y)`` for real vectors of length ``N`` or ``4n``."""
        M = self.eta if len(x) == self.N else self.eta_n
        return sum((Fraction(x[a]) * M[a, b] * Fraction(y[b])
                    for a in range(len(x)) if x[a] for b in range(len(y)) if y[b] and M[a, b]),
                   Fraction(0))

    def complex_structure(self, alpha: int, full: bool = True) -> np.ndarray:
        if alpha == 0:
            from .quat import eye
            return eye(self.N if full else 4 * self.n)
        if full:
            return self.complex_structures[alpha - 1]
        return left_mult(UNITS[alpha], self.n)

    def signature(self) -> Tuple[int, int]:
        """``(negative, positive)`` inertia of ``eta`` by exact LDL^T."""
        return _inertia(self.eta)

    # -- basis helpers -------------------------------------------------------
    def p_index(self, alpha: int = 0) -> int:
        return alpha

    def e_index(self, t: int, alpha: int = 0) -> int:
        """Real index of ``I_alpha e_{t+1}`` (0-based ``t``)."""
        return 4 + 4 * t + alpha

    def q_index(self, alpha: int = 0) -> int:
        return 4 * self.n + 4 + alpha

    def unit_vector(self, index: int) -> List[Fraction]:
        v = [Fraction(0)] * self.N
        v[index] = Fraction(1)
        return v

    def basis_labels(self) -> List[str]:
        units = ("", "i", "j", "k")
        out = [f"{u}p" for u in units]
        for t in range(self.n):
            out += [f"{u}e{t + 1}" for u in units]
        out += [f"{u}q" for u in units]
        return out


def _form(X: QVector, G: QMatrix, Y: QVector) -> Quat:
    acc = ZERO
    for s, xs in enumerate(X.coords):
        if not xs:
            continue
        for t, yt in enumerate(Y.coords):
            if yt and G[s, t]:
                acc = acc + xs * G[s, t] * yt.conj()
    return acc


def _inertia(M: np.ndarray) -> Tuple[int, int]:
    n = M.shape[0]
    a = [[Fraction(M[i, j]) for j in range(n)] for i in range(n)]
    neg = pos = 0
    k = 0
    active = list(range(n))
    while active:
        # pick a nonzero diagonal pivot, else create one from an off-diagonal pair
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by i + j
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = a[r][piv] / d
            if f:
                for c in range(n):
                    a[r][c] -= f * a[piv][c]
        for r in active:
            a[r][piv] = Fraction(0)
            a[piv][r] = Fraction(0)
        k += 1
    return neg, pos


def make_space(n: int, G: Optional[QMatrix] = None) -> HermitianSpace:
    """Build ``H^{1,n+1}`` with Gram matrix ``G`` on ``H^n`` (identity by default).

    Raises
    ------
    SpaceError
        If ``G`` has the wrong shape, is not Hermitian, or its realification
        is not positive definite.
    """
    if n < 0:
        raise SpaceError("n must be non-negative")
    if G is None:
        G = QMatrix.identity(n)
    if G.rows != n or G.cols != n:
        raise SpaceError(f"Gram matrix must be {n}x{n}")
    if G.conj().transpose() != G:
        raise SpaceError("Gram matrix is not Hermitian")
    eta_n = _hermitian_form_matrix(G) if n else zeros(0)
    if n and not _is_positive_definite(eta_n):
        raise SpaceError("realified Gram matrix is not positive definite")
    N = 4 * n + 8
    eta = zeros(N)
    # Re(u * 1 * conj(v)) between p- and q-blocks
    for a, u in enumerate(UNITS):
        for b, v in enumerate(UNITS):
            val = (u * v.conj()).re()
            if val:
                eta[a, 4 * n + 4 + b] = val
                eta[4 * n + 4 + a, b] = val
    if n:
        eta[4:4 + 4 * n, 4:4 + 4 * n] = eta_n
    I1, I2, I3 = (left_mult(u, n + 2) for u in (I, J, K))
    for arr in (eta, eta_n, I1, I2, I3):
        arr.flags.writeable = False
    return HermitianSpace(n=n, G=G, eta=eta, eta_n=eta_n, I1=I1, I2=I2, I3=I3)


def gram_from_forms(n: int, *, m: int = 0, m1: int = 0, m2: int = 0,
                    w: Optional[Sequence[Sequence[Sequence]]] = None,
                    wc: Optional[Sequence[Sequence]] = None,
                    eta_rest: Optional[Sequence[Sequence]] = None,
                    omega: Optional[Sequence[Sequence[Sequence]]] = None) -> QMatrix:
    """Block Gram matrix following the four block conditions of ``L(m, m1, m2, L')``.

    ``w`` holds three skew real ``m1 x m1`` forms (i, j, k parts), ``wc`` a skew
    complex form on the ``C^{m2}`` block given as nested ``Quat`` in ``R + Ri``,
    ``eta_rest``/``omega`` the positive definite form and three skew forms on
    the remaining indices.  Missing forms default to zero (identity ``eta``).
    """
    rows = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        rows[a][a] = ONE
    o1 = m
    for a in range(m1):
        for b in range(m1):
            if w is not None:
                rows[o1 + a][o1 + b] = (rows[o1 + a][o1 + b]
                                        + Quat(0, w[0][a][b], w[1][a][b], w[2][a][b]))
    o2 = m + m1
    for a in range(m2):
        for b in range(m2):
            if wc is not None:
                rows[o2 + a][o2 + b] = rows[o2 + a][o2 + b] + Quat.coerce(wc[a][b]) * J
    o3 = m + m1 + m2
    for a in range(n - o3):
        for b in range(n - o3):
            base = Quat(int(a == b))
            if eta_rest is not None:
                base = Quat(eta_rest[a][b])
            if omega is not None:
                base = base + Quat(0, omega[0][a][b], omega[1][a][b], omega[2][a][b])
            rows[o3 + a][o3 + b] = base
    return QMatrix(tuple(tuple(r) for r in rows))


def recover_g_from_eta(space: HermitianSpace, X: Sequence, Y: Sequence) -> Quat:
    """``eta(X,Y) + i eta(X,I1 Y) + j eta(X,I2 Y) + k eta(X,I3 Y)``.

    Works on real vectors of either ``R^{4n+8}`` or ``R^{4n}``.
    """
    full = len(X) == space.N
    if len(X) != len(Y) or (not full and len(X) != 4 * space.n):
        raise ValueError("dimension mismatch")
    Yv = np.array([Fraction(v) for v in Y], dtype=object)
    parts = [space.eta_form(X, Y)]
    for alpha in (1, 2, 3):
        Ia = space.complex_structure(alpha, full=full)
        parts.append(space.eta_form(X, list(Ia.dot(Yv))))
    return Quat(*parts)


# ---------------------------------------------------------------------------
# real subspaces of H^n

@dataclass(frozen=True)
class RealSubspace:
    """Real subspace of ``H^n = R^{4n}`` with an exact, independent basis."""

    ambient_n: int
    basis: Tuple[QVector, ...] = ()

    def __post_init__(self):
        basis = tuple(self.basis)
        for v in basis:
            if v.dim != self.ambient_n:
                raise SpaceError("basis vector outside H^n")
        if linalg.rank([v.to_real() for v in basis]) != len(basis):
            raise SpaceError("basis vectors are not R-linearly independent")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def span(cls, n: int, vectors: Sequence[QVector]) -> "RealSubspace":
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        vecs = [v.to_real() for v in vectors]
        idx = linalg.independent_subset(vecs)
        return cls(n, tuple(vectors[i] for i in idx))

    @classmethod
    def from_real(cls, n: int, vectors: Sequence[Sequence]) -> "RealSubspace":
        return cls.span(n, [QVector.from_real(v) for v in vectors])

    @classmethod
    def zero(cls, n: int) -> "RealSubspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def real_basis(self) -> List[List[Fraction]]:
        return [v.to_real() for v in self.basis]

    def canonical(self) -> List[List[Fraction]]:
        return linalg.span_basis(self.real_basis())

    def contains(self, X: QVector) -> bool:
        return linalg.in_span(X.to_real(), self.real_basis())

    def __contains__(self, X: QVector) -> bool:
        return self.contains(X)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealSubspace):
            return NotImplemented
        return self.ambient_n == other.ambient_n and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.ambient_n, tuple(tuple(r) for r in self.canonical())))

    def __le__(self, other: "RealSubspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def scaled(self, h: Quat) -> "RealSubspace":
        """``h L`` for a quaternion ``h`` (left multiplication)."""
        return RealSubspace.span(self.ambient_n, [v.scale(h) for v in self.basis])

    def __add__(self, other: "RealSubspace") -> "RealSubspace":
        return RealSubspace.span(self.ambient_n, list(self.basis) + list(other.basis))

    def intersect(self, other: "RealSubspace") -> "RealSubspace":
        return RealSubspace.from_real(self.ambient_n,
                                      linalg.intersect(self.real_basis(), other.real_basis()))

    def quaternionic_span(self) -> "RealSubspace":
        return RealSubspace.span(self.ambient_n,
                                 [v.scale(u) for v in self.basis for u in UNITS])

    def g_orthogonal_in(self, space: HermitianSpace, other: "RealSubspace") -> "RealSubspace":
        """``{X in self | g(X, other) = 0}``."""
        if not other.basis or not self.basis:
            return self
        rows = []
        for Y in other.basis:
            for u in UNITS:
                # eta(X, uY) for each basis element of self -> a linear condition
                rows.append([space.g(X, Y.scale(u)).re() for X in self.basis])
        ker = linalg.nullspace(rows, self.dim)
        vecs = []
        for k in ker:
            acc = [Fraction(0)] * (4 * self.ambient_n)
            for c, X in zip(k, self.basis):
                if c:
                    acc = [a + c * x for a, x in zip(acc, X.to_real())]
            vecs.append(acc)
        return RealSubspace.from_real(self.ambient_n, vecs)

    def is_g_orthogonal_to(self, space: HermitianSpace, other: "RealSubspace") -> bool:
        return all(not space.g(X, Y) for X in self.basis for Y in other.basis)

    def __repr__(self) -> str:
        return f"RealSubspace(n={self.ambient_n}, dim={self.dim})"


def _f(n: int, offset: int, t: int, unit: Quat = ONE) -> QVector:
    """``unit * f_t`` with ``f_t = e_{offset + t}`` (``t`` 1-based)."""
    return QVector.basis(n, offset + t - 1, unit)


def build_B(l: int, n: Optional[int] = None, offset: int = 0, swapped: bool = False) -> RealSubspace:
    """``span_R{f_1..f_l, i f_1 + j f_2, ..., i f_{l-1} + j f_l}``.

    ``swapped=True`` uses the generators ``j f_t + i f_{t+1}`` instead, the
    other index order in which this block is written.
    """
    if l < 1:
        raise SpaceError("B(l) needs l >= 1")
    n = offset + l if n is None else n
    if offset + l > n:
        raise SpaceError("B(l) does not fit in H^n")
    gens = [_f(n, offset, t) for t in range(1, l + 1)]
    a, b = (J, I) if swapped else (I, J)
    gens += [_f(n, offset, t, a) + _f(n, offset, t + 1, b) for t in range(1, l)]
    return RealSubspace(n, tuple(gens))


def build_A(two_l_minus_1: int, n: Optional[int] = None, offset: int = 0) -> RealSubspace:
    """The indecomposable block ``A(2l-1)`` inside ``H^{2l-1}``."""
    if two_l_minus_1 < 3 or two_l_minus_1 % 2 == 0:
        raise SpaceError("A(2l-1) needs an odd size 2l-1 with l >= 2")
    l = (two_l_minus_1 + 1) // 2
    n = offset + two_l_minus_1 if n is None else n
    if offset + two_l_minus_1 > n:
        raise SpaceError("A(2l-1) does not fit in H^n")
    f = lambda t, u=ONE: _f(n, offset, t, u)
    gens = [f(t) for t in range(1, l)]
    gens += [f(t) for t in range(l + 1, 2 * l)]
    gens += [f(t, I) + f(t + 1, J) for t in range(1, l)]
    gens.append(f(l) + f(l + 1, I))
    gens += [f(t, J) + f(t + 1, I) for t in range(l + 1, 2 * l - 1)]
    return RealSubspace(n, tuple(gens))


def quaternionic_block(n: int, start: int, count: int) -> RealSubspace:
    """``H^count`` on ``e_{start+1} .. e_{start+count}``."""
    return RealSubspace(n, tuple(QVector.basis(n, start + t, u)
                                 for t in range(count) for u in UNITS))


def imaginary_block(n: int, start: int, count: int) -> RealSubspace:
    """``Im H^count = i R^count + j R^count + k R^count``."""
    return RealSubspace(n, tuple(QVector.basis(n, start + t, u)
                                 for t in range(count) for u in (I, J, K)))


def complex_block(n: int, start: int, count: int) -> RealSubspace:
    """``C^count = span_{R + Ri}`` of the given basis vectors."""
    return RealSubspace(n, tuple(QVector.basis(n, start + t, u)
                                 for t in range(count) for u in (ONE, I)))


def build_L(m: int, m1: int, m2: int, Lprime: Optional[RealSubspace] = None,
            n: Optional[int] = None, space: Optional[HermitianSpace] = None) -> RealSubspace:
    """``H^m + Im H^{m1} + C^{m2} + L'`` on consecutive index ranges.

    ``L'`` must live on the indices after ``m + m1 + m2``.  When ``space`` is
    given, the g-orthogonality of the four summands is verified.
    """
    if space is not None:
        n = space.n
    if n is None:
        n = Lprime.ambient_n if Lprime is not None else m + m1 + m2
    if min(m, m1, m2) < 0:
        raise SpaceError("block sizes must be non-negative")
    if m + m1 + m2 > n:
        raise SpaceError("blocks do not fit in H^n")
    parts = [quaternionic_block(n, 0, m), imaginary_block(n, m, m1), complex_block(n, m + m1, m2)]
    if Lprime is not None and Lprime.dim:
        if Lprime.ambient_n != n:
            raise SpaceError("L' lives in a different H^n")
        used = m + m1 + m2
        for v in Lprime.basis:
            if any(v[t] for t in range(used)):
                raise SpaceError("L' overlaps the index range of H^m + Im H^m1 + C^m2")
        parts.append(Lprime)
    if space is not None:
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                if not parts[a].is_g_orthogonal_to(space, parts[b]):
                    raise SpaceError("summands of L are not g-orthogonal")
    out = RealSubspace.zero(n)
    for p_ in parts:
        out = out + p_
    return out


def rho_closure(Lp: RealSubspace) -> RealSubspace:
    """``rho(L') = span_R{X, Y, jX - iY | X, Y, jX - iY in L'}``.

    Solved exactly: with ``X = sum x_a v_a`` and ``Y = sum y_b v_b`` the
    condition ``jX - iY in L'`` is linear in ``(x, y)``.
    """
    n = Lp.ambient_n
    d = Lp.dim
    if d == 0:
        return Lp
    # unknowns: x (d), y (d), z (d) with jX - iY - sum z_c v_c = 0
    jv = [v.scale(J).to_real() for v in Lp.basis]
    iv = [v.scale(I).to_real() for v in Lp.basis]
    vv = Lp.real_basis()
    rows = []
    for r in range(4 * n):
        rows.append([jv[a][r] for a in range(d)] + [-iv[a][r] for a in range(d)]
                    + [-vv[a][r] for a in range(d)])
    ker = linalg.nullspace(rows, 3 * d)
    out = []
    for k in ker:
        x, y = k[:d], k[d:2 * d]
        X = [sum((x[a] * vv[a][r] for a in range(d)), Fraction(0)) for r in range(4 * n)]
        Y = [sum((y[a] * vv[a][r] for a in range(d)), Fraction(0)) for r in range(4 * n)]
        Xq, Yq = QVector.from_real(X), QVector.from_real(Y)
        out += [Xq, Yq, Xq.scale(J) - Yq.scale(I)]
    return RealSubspace.span(n, out)


@dataclass(frozen=True)
class Decomposition:
    L1: RealSubspace
    L5: RealSubspace
    L4c: RealSubspace
    Lrest: RealSubspace

    def parts(self) -> Tuple[RealSubspace, ...]:
        return (self.L1, self.L5, self.L4c, self.Lrest)


def decompose_L(L: RealSubspace, space: Optional[HermitianSpace] = None) -> Decomposition:
    """Split ``L`` into quaternionic, ``sp(1) U``, ``I_1``-complex and remaining parts.

    ``L1 = L ∩ iL ∩ jL ∩ kL``; ``L2`` its g-orthogonal complement in ``L``;
    ``U = iL2 ∩ jL2 ∩ kL2`` and ``L5 = iU + jU + kU``; ``L4`` is the
    complement of ``L5`` in ``L2``; ``L4c = iL4 ∩ L4`` w.r.t. the standard
    structure and ``Lrest`` the complement of ``L4c`` in ``L4``.
    """
    n = L.ambient_n
    if space is None:
        space = make_space(n)
    L1 = L.intersect(L.scaled(I)).intersect(L.scaled(J)).intersect(L.scaled(K))
    L2 = L.g_orthogonal_in(space, L1)
    U = L2.scaled(I).intersect(L2.scaled(J)).intersect(L2.scaled(K))
    L5 = U.scaled(I) + U.scaled(J) + U.scaled(K)
    L4 = L2.g_orthogonal_in(space, L5)
    L4c = L4.scaled(I).intersect(L4)
    Lrest = L4.g_orthogonal_in(space, L4c)
    return Decomposition(L1, L5, L4c, Lrest)
