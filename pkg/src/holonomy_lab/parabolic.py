"""The parabolic algebra ``sp(1,n+1)_{Hp}`` and its subalgebras.

An element ``(a, A, X, b)`` is the H-linear map with quaternionic matrix ::

    [[a, -(G conj(X))^t, b],
     [0,        A,       X],
     [0,        0,  -conj(a)]]

in the basis ``p, e_1..e_n, q``.  Here ``a`` is any quaternion, ``A`` a
matrix in ``sp(n)`` (``A^t G + G conj(A) = 0``), ``X`` in ``H^n`` and ``b``
imaginary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .hermitian import HermitianSpace
from .quat import (ONE, UNITS, ZERO, QMatrix, QVector, Quat, exact_matrix, mdot,
                   realify, zeros)


class AlgebraError(ValueError):
    """Invalid element, basis or ambient mismatch."""


def sp_condition(A: QMatrix, G: QMatrix) -> QMatrix:
    """``A^t G + G conj(A)``; zero exactly when ``Op(A)`` is g-skew."""
    return A.transpose() @ G + G @ A.conj()


def sp_basis(n: int, G: Optional[QMatrix] = None) -> List[QMatrix]:
    """Exact real basis of ``sp(n) = {A : A^t G + G conj(A) = 0}``."""
    if G is None:
        G = QMatrix.identity(n)
    if G.rows != n or G.cols != n or G.conj().transpose() != G:
        raise AlgebraError("invalid Gram matrix")
    if n == 0:
        return []
    nvar = 4 * n * n
    units = [QMatrix.from_real([int(i == v) for i in range(nvar)], n) for v in range(nvar)]
    images = [sp_condition(U, G).to_real() for U in units]
    rows = [[images[v][r] for v in range(nvar)] for r in range(nvar)]
    return [QMatrix.from_real(k, n) for k in linalg.nullspace(rows, nvar)]


@dataclass(frozen=True, eq=False)
class ParabolicElement:
    """``(a, A, X, b)`` in ``sp(1,n+1)_{Hp}`` over a fixed :class:`HermitianSpace`."""

    space: HermitianSpace
    a: Quat = ZERO
    A: Optional[QMatrix] = None
    X: Optional[QVector] = None
    b: Quat = ZERO

    def __post_init__(self):
        n = self.space.n
        object.__setattr__(self, "a", Quat.coerce(self.a))
        object.__setattr__(self, "b", Quat.coerce(self.b))
        if self.A is None:
            object.__setattr__(self, "A", QMatrix.zeros(n))
        if self.X is None:
            object.__setattr__(self, "X", QVector.zeros(n))
        if self.A.rows != n or self.A.cols != n or self.X.dim != n:
            raise AlgebraError("component shapes do not match the ambient space")

    def validate(self) -> None:
        if self.b.re() != 0:
            raise AlgebraError("b must be imaginary")
        if sp_condition(self.A, self.space.G):
            raise AlgebraError("A is not in sp(n)")

    # -- linear structure -----------------------------------------------------
    def __add__(self, other: "ParabolicElement") -> "ParabolicElement":
        _same(self, other)
        return ParabolicElement(self.space, self.a + other.a, self.A + other.A,
                                self.X + other.X, self.b + other.b)

    def __sub__(self, other: "ParabolicElement") -> "ParabolicElement":
        return self + other.scale(-1)

    def __neg__(self) -> "ParabolicElement":
        return self.scale(-1)

    def scale(self, c) -> "ParabolicElement":
        c = Fraction(c)
        return ParabolicElement(self.space, self.a * c, self.A.scale(c),
                                QVector(tuple(x * c for x in self.X)), self.b * c)

    def __rmul__(self, c) -> "ParabolicElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParabolicElement):
            return NotImplemented
        return self.space is other.space and self.to_vector() == other.to_vector()

    def __hash__(self) -> int:
        return hash(tuple(self.to_vector()))

    def __bool__(self) -> bool:
        return any(v != 0 for v in self.to_vector())

    def to_vector(self) -> List[Fraction]:
        """Real coordinates ``(a, A, X, b)``: 4 + 4n^2 + 4n + 4 numbers."""
        return list(self.a.coeffs) + self.A.to_real() + self.X.to_real() + list(self.b.coeffs)

    @classmethod
    def from_vector(cls, space: HermitianSpace, vec: Sequence) -> "ParabolicElement":
        n = space.n
        vec = [Fraction(v) for v in vec]
        a = Quat(*vec[0:4])
        A = QMatrix.from_real(vec[4:4 + 4 * n * n], n)
        o = 4 + 4 * n * n
        X = QVector.from_real(vec[o:o + 4 * n])
        b = Quat(*vec[o + 4 * n:o + 4 * n + 4])
        return cls(space, a, A, X, b)

    # -- matrix forms ----------------------------------------------------------
    def quaternionic_matrix(self) -> QMatrix:
        n = self.space.n
        G = self.space.G
        Xbar = QVector(tuple(x.conj() for x in self.X))
        GX = [sum((G[s, t] * Xbar[t] for t in range(n)), ZERO) for s in range(n)]
        rows = [[ZERO] * (n + 2) for _ in range(n + 2)]
        rows[0][0] = self.a
        for t in range(n):
            rows[0][t + 1] = -GX[t]
            rows[t + 1][n + 1] = self.X[t]
            for s in range(n):
                rows[s + 1][t + 1] = self.A[s, t]
        rows[0][n + 1] = self.b
        rows[n + 1][n + 1] = -self.a.conj()
        return QMatrix(tuple(tuple(r) for r in rows))

    def matrix(self) -> np.ndarray:
        """Realified ``(4n+8) x (4n+8)`` matrix."""
        return realify(self.quaternionic_matrix())

    def __repr__(self) -> str:
        return f"ParabolicElement(a={self.a!r}, A={self.A!r}, X={self.X!r}, b={self.b!r})"


def element_from_matrix(space: HermitianSpace, M: np.ndarray) -> ParabolicElement:
    """Read ``(a, A, X, b)`` off a realified matrix.

    Raises :class:`AlgebraError` when ``M`` is not in ``sp(1,n+1)_{Hp}``.
    """
    n = space.n
    N = space.N
    if M.shape != (N, N):
        raise AlgebraError("matrix has the wrong size")
    col = lambda r0, c0: Quat(*(M[r0 + c, c0] for c in range(4)))
    q0 = 4 * n + 4
    a = col(0, 0)
    b = col(0, q0)
    X = QVector(tuple(col(4 + 4 * t, q0) for t in range(n)))
    A = QMatrix(tuple(tuple(col(4 + 4 * s, 4 + 4 * t) for t in range(n)) for s in range(n)))
    u = ParabolicElement(space, a, A, X, b)
    if u.b.re() != 0 or sp_condition(A, space.G) or not (u.matrix() == M).all():
        raise AlgebraError("matrix is not in sp(1,n+1)_Hp")
    return u


def _same(u: ParabolicElement, v: ParabolicElement) -> None:
    if u.space is not v.space:
        raise AlgebraError("elements live over different ambient spaces")


def element(space: HermitianSpace, a=ZERO, A=None, X=None, b=ZERO) -> ParabolicElement:
    return ParabolicElement(space, Quat.coerce(a), A, X, Quat.coerce(b))


def bracket(u: ParabolicElement, v: ParabolicElement) -> ParabolicElement:
    """Lie bracket from the block structure, without matrices.

    ``[(a,A,X,b), (a',A',X',b')] = (a'a - aa', [A,A'], A X' - A' X + conj(a) X'
    - conj(a') X, 2 Im(b'a) - 2 Im(b a') + 2 Im g(X, X'))`` with ``[A,A']`` the
    commutator of the H-linear maps and ``A X' = Op(A) X'``.
    """
    from .quat import op_apply
    _same(u, v)
    a, A, X, b = u.a, u.A, u.X, u.b
    a2, A2, X2, b2 = v.a, v.A, v.X, v.b
    new_a = a2 * a - a * a2
    new_A = A.compose(A2) - A2.compose(A)
    new_X = (op_apply(A, X2) - op_apply(A2, X)
             + X2.scale(a.conj()) - X.scale(a2.conj()))
    new_b = ((b2 * a).im() * 2 - (b * a2).im() * 2
             + u.space.g(X, X2).im() * 2)
    return ParabolicElement(u.space, new_a, new_A, new_X, new_b)


def matrix_commutator(u: ParabolicElement, v: ParabolicElement) -> np.ndarray:
    """Commutator of the realified matrices (the bracket oracle)."""
    M, N = u.matrix(), v.matrix()
    return mdot(M, N) - mdot(N, M)


def parabolic_basis(space: HermitianSpace) -> List[ParabolicElement]:
    """Basis of ``sp(1,n+1)_{Hp}``: ``a`` (4), ``sp(n)``, ``H^n`` (4n), ``Im H`` (3)."""
    n = space.n
    out = [element(space, a=u) for u in UNITS]
    out += [element(space, A=A) for A in sp_basis(n, space.G)]
    out += [element(space, X=QVector.basis(n, t, u)) for t in range(n) for u in UNITS]
    out += [element(space, b=u) for u in UNITS[1:]]
    return out


def parabolic_dimension(n: int) -> int:
    return 7 + 4 * n + n * (2 * n + 1)


# ---------------------------------------------------------------------------
# grading, bivectors, f-projection

def grading_element(space: HermitianSpace) -> ParabolicElement:
    return element(space, a=ONE)


def grading_decompose(u: ParabolicElement) -> Tuple[ParabolicElement, ParabolicElement, ParabolicElement]:
    """Split into degrees 0 (``a, A``), 1 (``X``) and 2 (``b``)."""
    s = u.space
    return (ParabolicElement(s, u.a, u.A, None, ZERO),
            ParabolicElement(s, ZERO, None, u.X, ZERO),
            ParabolicElement(s, ZERO, None, None, u.b))


def _eta_inverse(space: HermitianSpace) -> np.ndarray:
    inv = getattr(space, "_eta_inv", None)
    if inv is None:
        inv = exact_matrix(linalg.inverse(space.eta.tolist()))
        object.__setattr__(space, "_eta_inv", inv)
    return inv


def matrix_to_bivector(space: HermitianSpace, F: np.ndarray) -> Dict[Tuple[int, int], Fraction]:
    """Coefficients ``c_IJ`` (``I < J``) with ``F = sum c_IJ (e_I ^ e_J)``.

    ``(u ^ v) w = eta(u, w) v - eta(v, w) u``, so the antisymmetric
    coefficient matrix is ``C = -F eta^{-1}``.
    """
    C = -mdot(F, _eta_inverse(space))
    N = F.shape[0]
    out = {}
    for i in range(N):
        for j in range(i + 1, N):
            if C[i, j] != 0:
                out[(i, j)] = Fraction(C[i, j])
    return out


def bivector_to_matrix(space: HermitianSpace, coeffs: Dict[Tuple[int, int], Fraction]) -> np.ndarray:
    """Endomorphism ``w -> sum c_IJ (eta(e_I, w) e_J - eta(e_J, w) e_I)``."""
    N = space.N
    out = zeros(N)
    eta = space.eta
    for (i, j), c in coeffs.items():
        for w in range(N):
            if eta[i, w]:
                out[j, w] += c * eta[i, w]
            if eta[j, w]:
                out[i, w] -= c * eta[j, w]
    return out


def to_bivector(u: ParabolicElement) -> Dict[Tuple[int, int], Fraction]:
    return matrix_to_bivector(u.space, u.matrix())


def bivector_labels(space: HermitianSpace, coeffs: Dict[Tuple[int, int], Fraction]) -> Dict[str, Fraction]:
    labels = space.basis_labels()
    return {f"{labels[i]}^{labels[j]}": c for (i, j), c in coeffs.items()}


@dataclass(frozen=True, eq=False)
class SimElement:
    """Element ``(a0, a1 + A, X)`` of ``sim H^n = R + (sp(1) + sp(n)) |x H^n``.

    ``a1`` is the imaginary quaternion coming from the ``a``-slot; it acts on
    ``H^n`` by ``X -> -a1 X``.
    """

    a0: Fraction
    a1: Quat
    A: QMatrix
    X: QVector

    def affine_matrix(self) -> np.ndarray:
        """``(4n+1)``-square affine matrix ``[[a0 - L(a1) + Op(A), X], [0, 0]]``."""
        from .quat import left_mult
        n = self.X.dim
        out = zeros(4 * n + 1)
        lin = realify(self.A) - left_mult(self.a1, n)
        for t in range(4 * n):
            lin[t, t] += self.a0
        out[:4 * n, :4 * n] = lin
        for r, v in enumerate(self.X.to_real()):
            out[r, 4 * n] = v
        return out

    def to_vector(self) -> List[Fraction]:
        return [self.a0] + list(self.a1.coeffs) + self.A.to_real() + self.X.to_real()


def f_projection(u: ParabolicElement) -> SimElement:
    """``f(a0 + a1, A, X, b) = (a0, a1 + A, X)``; the kernel is ``Im H``."""
    return SimElement(u.a.re(), u.a.im(), u.A, u.X)


# ---------------------------------------------------------------------------
# subalgebras

class Subalgebra:
    """Real span of parabolic elements, checked for bracket closure.

    Parameters
    ----------
    space : HermitianSpace
    basis : sequence of ParabolicElement
        Must be R-independent.
    metadata : optional
        Usually the :class:`~holonomy_lab.families.FamilySpec` it came from.
    check_closure : bool
        Verify exactly that all pairwise brackets stay in the span.
    """

    def __init__(self, space: HermitianSpace, basis: Sequence[ParabolicElement],
                 metadata=None, check_closure: bool = True, name: str = ""):
        self.space = space
        self.basis = tuple(basis)
        self.metadata = metadata
        self.name = name
        for x in self.basis:
            if x.space is not space:
                raise AlgebraError("basis element over a different ambient space")
            x.validate()
        vecs = [x.to_vector() for x in self.basis]
        self._ech = linalg.SparseEchelon(len(parabolic_vector_template(space)))
        for v in vecs:
            if not self._ech.add(linalg.to_sparse(v)):
                raise AlgebraError("basis is not R-linearly independent")
        if check_closure:
            bad = self.closure_defects()
            if bad:
                i, j = bad[0]
                raise AlgebraError(f"not closed under the bracket: [b{i}, b{j}] leaves the span")

    @classmethod
    def spanned_by(cls, space: HermitianSpace, elements: Sequence[ParabolicElement],
                   **kw) -> "Subalgebra":
        """Subalgebra on an independent subfamily of possibly dependent generators."""
        idx = linalg.independent_subset([e.to_vector() for e in elements])
        return cls(space, [elements[i] for i in idx], **kw)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: ParabolicElement) -> bool:
        return self._ech.contains(linalg.to_sparse(x.to_vector()))

    def __contains__(self, x: ParabolicElement) -> bool:
        return self.contains(x)

    def closure_defects(self) -> List[Tuple[int, int]]:
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not self.contains(bracket(self.basis[i], self.basis[j])):
                    out.append((i, j))
        return out

    def matrices(self) -> List[np.ndarray]:
        return [x.matrix() for x in self.basis]

    def same_span(self, other: "Subalgebra") -> bool:
        return (self.dim == other.dim
                and all(other.contains(x) for x in self.basis))

    def translation_part(self):
        """``pr_{H^n}`` of the algebra as a RealSubspace."""
        from .hermitian import RealSubspace
        return RealSubspace.span(self.space.n, [x.X for x in self.basis])

    def projection_dims(self) -> Dict[str, int]:
        n = self.space.n
        proj = {
            "H": [list(x.a.coeffs) for x in self.basis],
            "R": [[x.a.re()] for x in self.basis],
            "sp1": [list(x.a.im().coeffs) for x in self.basis],
            "spn": [x.A.to_real() for x in self.basis],
            "Hn": [x.X.to_real() for x in self.basis],
            "ImH": [list(x.b.coeffs) for x in self.basis],
        }
        return {k: linalg.rank(v) if v else 0 for k, v in proj.items()}

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Subalgebra{label} dim={self.dim} n={self.space.n}>"


def parabolic_vector_template(space: HermitianSpace) -> List[int]:
    n = space.n
    return [0] * (8 + 4 * n * n + 4 * n)


def full_parabolic(space: HermitianSpace) -> Subalgebra:
    return Subalgebra(space, parabolic_basis(space), name="sp(1,n+1)_Hp", check_closure=False)


def is_eta_skew(space: HermitianSpace, F: np.ndarray) -> bool:
    eta = space.eta
    M = mdot(F.T, eta) + mdot(eta, F)
    return not any(v != 0 for v in M.flat)


def commutes_with_structure(space: HermitianSpace, F: np.ndarray) -> bool:
    for Ia in space.complex_structures:
        C = mdot(F, Ia) - mdot(Ia, F)
        if any(v != 0 for v in C.flat):
            return False
    return True
