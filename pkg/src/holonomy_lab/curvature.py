"""Spaces of algebraic curvature tensors and the Berger test.

``R(g)`` is the space of linear maps ``R: Λ²V -> g`` satisfying the first
Bianchi identity.  :func:`solve_R` writes ``R(e_I, e_J) = sum_k x_{IJ,k} g_k``
over a basis ``g_k`` of the algebra, so membership in ``g`` holds by
construction, and returns the exact nullspace of the Bianchi equations.
Unknowns are ordered lexicographically by bivector, then by generator.
"""

from __future__ import annotations

import itertools
import logging
import time
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import linalg
from .quat import exact_matrix, is_zero, mdot, zeros

log = logging.getLogger(__name__)

Pair = Tuple[int, int]


class CurvatureError(ValueError):
    """Generators are not skew, dimensions disagree, or a tensor is malformed."""


# ---------------------------------------------------------------------------
# tensors

class CurvatureTensor:
    """A map ``Λ²R^N -> so(eta)`` stored on basis bivectors ``e_I ^ e_J`` (``I < J``).

    Only non-zero values are kept.  ``value(I, J)`` handles antisymmetry.
    """

    def __init__(self, N: int, values: Dict[Pair, np.ndarray], elements=None):
        self.N = N
        vals = {}
        for (i, j), M in values.items():
            if i == j:
                continue
            if i > j:
                i, j, M = j, i, -M
            if M.shape != (N, N):
                raise CurvatureError("value has the wrong shape")
            if not is_zero(M):
                M = M.copy()
                M.flags.writeable = False
                vals[(i, j)] = M
        self._values = vals
        self._ints = None
        # optional (a, A, X, b) form of each value, kept by constructors that have it
        self.elements = elements

    @property
    def values(self) -> Dict[Pair, np.ndarray]:
        return dict(self._values)

    def value(self, i: int, j: int) -> np.ndarray:
        if i == j:
            return zeros(self.N)
        if i < j:
            M = self._values.get((i, j))
            return zeros(self.N) if M is None else M
        M = self._values.get((j, i))
        return zeros(self.N) if M is None else -M

    def apply(self, i: int, j: int, k: int) -> np.ndarray:
        """Column ``R(e_i, e_j) e_k``."""
        return self.value(i, j)[:, k]

    def is_zero(self) -> bool:
        return not self._values

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        keys = set(self._values) | set(other._values)
        return CurvatureTensor(self.N, {p: self.value(*p) + other.value(*p) for p in keys})

    def __sub__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        return self + other.scale(-1)

    def scale(self, c) -> "CurvatureTensor":
        c = Fraction(c)
        return CurvatureTensor(self.N, {p: M * c for p, M in self._values.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        if self.N != other.N or set(self._values) != set(other._values):
            return False
        return all((self._values[p] == other._values[p]).all() for p in self._values)

    def flat(self) -> Dict[int, Fraction]:
        """Sparse coordinates over (pair, row, col); used for rank computations."""
        N = self.N
        out = {}
        for (i, j), M in self._values.items():
            base = (i * N + j) * N * N
            for (r, c), v in np.ndenumerate(M):
                if v != 0:
                    out[base + r * N + c] = v
        return out

    def images(self) -> List[np.ndarray]:
        return list(self._values.values())

    def integer_form(self) -> Dict[Pair, np.ndarray]:
        """Values rescaled by one common denominator to Python-int arrays.

        All identities checked here are homogeneous, so they can be tested on
        this form; integer object arithmetic is far cheaper than Fractions.
        """
        if self._ints is None:
            self._ints = _integerize(self._values)
        return self._ints

    def ivalue(self, i: int, j: int) -> np.ndarray:
        ints = self.integer_form()
        if i == j:
            return _izeros(self.N)
        if i < j:
            M = ints.get((i, j))
            return _izeros(self.N) if M is None else M
        M = ints.get((j, i))
        return _izeros(self.N) if M is None else -M

    def to_json(self) -> List[dict]:
        from .serialize import matrix_to_json
        return [{"bivector": [i, j], "matrix": matrix_to_json(M)}
                for (i, j), M in sorted(self._values.items())]

    @classmethod
    def from_json(cls, N: int, data: Sequence[dict]) -> "CurvatureTensor":
        from .serialize import matrix_from_json
        return cls(N, {tuple(d["bivector"]): matrix_from_json(d["matrix"]) for d in data})

    def __repr__(self) -> str:
        return f"<CurvatureTensor N={self.N} nonzero_pairs={len(self._values)}>"


class PTensor:
    """A linear map ``R^m -> h`` stored on basis vectors."""

    def __init__(self, m: int, values: Dict[int, np.ndarray]):
        self.m = m
        self._values = {x: M for x, M in values.items() if not is_zero(M)}

    def value(self, x: int) -> np.ndarray:
        M = self._values.get(x)
        return zeros(self.m) if M is None else M

    def apply_vector(self, vec: Sequence) -> np.ndarray:
        """``P(v)`` for an arbitrary real vector ``v``."""
        out = zeros(self.m)
        for x, c in enumerate(vec):
            if c and x in self._values:
                out = out + self._values[x] * Fraction(c)
        return out

    def scale(self, c) -> "PTensor":
        return PTensor(self.m, {x: M * Fraction(c) for x, M in self._values.items()})

    def __add__(self, other: "PTensor") -> "PTensor":
        keys = set(self._values) | set(other._values)
        return PTensor(self.m, {x: self.value(x) + other.value(x) for x in keys})

    def is_zero(self) -> bool:
        return not self._values

    def __repr__(self) -> str:
        return f"<PTensor m={self.m} nonzero={len(self._values)}>"


# ---------------------------------------------------------------------------
# generic solvers

def _as_matrices(g) -> Tuple[List[np.ndarray], Optional[np.ndarray]]:
    from .parabolic import Subalgebra
    if isinstance(g, Subalgebra):
        return g.matrices(), g.space.eta
    return [np.asarray(M, dtype=object) for M in g], None


def _check_generators(mats: List[np.ndarray], eta: np.ndarray) -> None:
    N = eta.shape[0]
    for k, M in enumerate(mats):
        if M.shape != (N, N):
            raise CurvatureError(f"generator {k} has shape {M.shape}, expected {(N, N)}")
        S = mdot(M.T, eta) + mdot(eta, M)
        if not is_zero(S):
            raise CurvatureError(f"generator {k} is not eta-skew")


def _columns(mats: List[np.ndarray]) -> List[List[Dict[int, Fraction]]]:
    """``cols[k][K] = {row: value}`` for column ``K`` of generator ``k``."""
    out = []
    for M in mats:
        N = M.shape[0]
        out.append([{r: M[r, c] for r in range(N) if M[r, c] != 0} for c in range(N)])
    return out


@dataclass
class CurvatureSpace:
    """Result of :func:`solve_R`: a basis of ``R(g)`` in generator coordinates."""

    N: int
    generators: List[np.ndarray]
    pairs: List[Pair]
    coords: List[Dict[int, Fraction]]
    elapsed: float = 0.0
    _tensors: Optional[List[CurvatureTensor]] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def gdim(self) -> int:
        return len(self.generators)

    def pair_coefficients(self, index: int) -> Dict[Pair, List[Fraction]]:
        """``R(e_I, e_J)`` of the ``index``-th basis tensor in generator coordinates."""
        d = self.gdim
        out: Dict[Pair, List[Fraction]] = {}
        for u, v in self.coords[index].items():
            pid, k = divmod(u, d)
            out.setdefault(self.pairs[pid], [Fraction(0)] * d)[k] = v
        return out

    def tensor(self, index: int) -> CurvatureTensor:
        vals = {}
        for p, cs in self.pair_coefficients(index).items():
            M = zeros(self.N)
            for c, G in zip(cs, self.generators):
                if c:
                    M = M + G * c
            vals[p] = M
        return CurvatureTensor(self.N, vals)

    def tensors(self) -> List[CurvatureTensor]:
        if self._tensors is None:
            self._tensors = [self.tensor(i) for i in range(self.dim)]
        return self._tensors

    def image_span_dim(self) -> int:
        """``dim`` of the span of all ``R(e_I, e_J)`` over the basis."""
        ech = linalg.SparseEchelon(self.gdim)
        for i in range(self.dim):
            for cs in self.pair_coefficients(i).values():
                ech.add(linalg.to_sparse(cs))
                if ech.rank == self.gdim:
                    return ech.rank
        return ech.rank

    def image_span(self) -> List[List[Fraction]]:
        vecs = [cs for i in range(self.dim) for cs in self.pair_coefficients(i).values()]
        return linalg.span_basis(vecs) if vecs else []

    def contains(self, R: CurvatureTensor) -> bool:
        """Exact test ``R in R(g)`` (membership of values and Bianchi)."""
        return tensor_in_algebra(R, self.generators) and bianchi_defect(R) is None


def solve_R(g, eta: Optional[np.ndarray] = None) -> CurvatureSpace:
    """Exact basis of ``R(g)``.

    Parameters
    ----------
    g : Subalgebra or sequence of (N, N) exact matrices
        Spanning set of the algebra (dependent generators are dropped).
    eta : array, optional
        The metric; taken from the subalgebra's space when ``g`` is one.
    """
    t0 = time.perf_counter()
    mats, eta_g = _as_matrices(g)
    eta = eta_g if eta is None else eta
    if eta is None:
        raise CurvatureError("eta is required for a bare list of matrices")
    N = eta.shape[0]
    _check_generators(mats, eta)
    idx = linalg.independent_subset([list(M.flat) for M in mats]) if mats else []
    mats = [mats[i] for i in idx]
    d = len(mats)
    pairs = linalg.pairs(N)
    if d == 0:
        return CurvatureSpace(N, [], pairs, [], time.perf_counter() - t0)
    pid = {p: u for u, p in enumerate(pairs)}
    cols = _columns(mats)
    ech = linalg.SparseEchelon(len(pairs) * d)
    for I, J, K in itertools.combinations(range(N), 3):
        # R(I,J)e_K + R(J,K)e_I - R(I,K)e_J = 0, one equation per component
        eqs: Dict[int, Dict[int, Fraction]] = {}
        for (pair, col, sign) in (((I, J), K, 1), ((J, K), I, 1), ((I, K), J, -1)):
            base = pid[pair] * d
            for k in range(d):
                for r, v in cols[k][col].items():
                    row = eqs.setdefault(r, {})
                    u = base + k
                    nv = row.get(u, 0) + sign * v
                    if nv:
                        row[u] = nv
                    else:
                        row.pop(u, None)
        for row in eqs.values():
            if row:
                ech.add(row)
    coords = ech.nullspace()
    elapsed = time.perf_counter() - t0
    log.info("solve_R: N=%d dim g=%d unknowns=%d rank=%d dim R=%d (%.2fs)",
             N, d, len(pairs) * d, ech.rank, len(coords), elapsed)
    return CurvatureSpace(N, mats, pairs, coords, elapsed)


@dataclass
class PSpace:
    m: int
    generators: List[np.ndarray]
    coords: List[Dict[int, Fraction]]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def tensor(self, index: int) -> PTensor:
        d = len(self.generators)
        vals: Dict[int, np.ndarray] = {}
        for u, c in self.coords[index].items():
            x, k = divmod(u, d)
            vals[x] = vals.get(x, zeros(self.m)) + self.generators[k] * c
        return PTensor(self.m, vals)

    def tensors(self) -> List[PTensor]:
        return [self.tensor(i) for i in range(self.dim)]


def solve_P(h: Sequence[np.ndarray], eta: np.ndarray) -> PSpace:
    """Exact basis of ``P(h) = {P : eta(P(x)y,z) + eta(P(y)z,x) + eta(P(z)x,y) = 0}``.

    The cyclic sum is alternating in ``(x, y, z)`` for skew ``P(x)``, so only
    strictly increasing triples are imposed.
    """
    m = eta.shape[0]
    mats = [np.asarray(M, dtype=object) for M in h]
    for k, M in enumerate(mats):
        if not is_zero(mdot(M.T, eta) + mdot(eta, M)):
            raise CurvatureError(f"generator {k} is not eta-skew")
    idx = linalg.independent_subset([list(M.flat) for M in mats]) if mats else []
    mats = [mats[i] for i in idx]
    d = len(mats)
    if d == 0:
        return PSpace(m, [], [])
    # eta(h_k e_y, e_z) = (eta h_k)[z, y]
    EH = [mdot(eta, M) for M in mats]
    ech = linalg.SparseEchelon(m * d)
    for x, y, z in itertools.combinations(range(m), 3):
        row: Dict[int, Fraction] = {}
        for k in range(d):
            for var, val in ((x, EH[k][z, y]), (y, EH[k][x, z]), (z, EH[k][y, x])):
                if val:
                    u = var * d + k
                    row[u] = row.get(u, 0) + val
        ech.add(row)
    return PSpace(m, mats, ech.nullspace())


# ---------------------------------------------------------------------------
# identity checks

def _izeros(N: int) -> np.ndarray:
    return np.zeros((N, N), dtype=np.int64).astype(object)


def _integerize(mats: Dict, den: Optional[int] = None) -> Dict:
    """Scale a dict of rational arrays by the lcm of all denominators."""
    if den is None:
        den = 1
        for M in mats.values():
            for v in M.flat:
                d = Fraction(v).denominator
                if d != 1:
                    den = den * d // gcd(den, d)
    out = {}
    for key, M in mats.items():
        A = np.empty(M.shape, dtype=object)
        for idx, v in np.ndenumerate(M):
            A[idx] = int(Fraction(v) * den)
        out[key] = A
    return out


def _int_matrix(M: np.ndarray) -> np.ndarray:
    return _integerize({0: M})[0]

def bianchi_defect(R: CurvatureTensor) -> Optional[Tuple[int, int, int]]:
    """First basis triple violating the first Bianchi identity, or None."""
    N = R.N
    for I, J, K in itertools.combinations(range(N), 3):
        s = R.ivalue(I, J)[:, K] + R.ivalue(J, K)[:, I] + R.ivalue(K, I)[:, J]
        if any(s):
            return (I, J, K)
    return None


def tensor_in_algebra(R: CurvatureTensor, generators: Sequence[np.ndarray]) -> bool:
    if not generators:
        return R.is_zero()
    ech = linalg.SparseEchelon(R.N * R.N)
    for G in generators:
        ech.add(linalg.to_sparse(list(G.flat)))
    return all(ech.contains(linalg.to_sparse(list(M.flat))) for M in R.images())


def star_defect(R: CurvatureTensor, eta: np.ndarray) -> Optional[Tuple[int, int, int, int]]:
    """Violation of ``eta(R(u,v)z, w) = eta(R(z,w)u, v)`` on basis quadruples."""
    N = R.N
    ieta = _int_matrix(eta)
    # E[(I,J)][L, K] = eta(R(e_I,e_J) e_K, e_L) up to a common positive factor
    E = {p: ieta.dot(M) for p, M in R.integer_form().items()}
    zero = _izeros(N)
    for u, v in linalg.pairs(N):
        Muv = E.get((u, v), zero)
        for z, w in linalg.pairs(N):
            Mzw = E.get((z, w), zero)
            if Muv[w, z] != Mzw[v, u]:
                return (u, v, z, w)
    return None


def symR_defect(R: CurvatureTensor, eta: np.ndarray) -> Optional[Tuple[Pair, Pair]]:
    """Violation of the eta^eta symmetry of ``R`` viewed as an operator on bivectors.

    Values are converted to bivectors ``C = -M eta^{-1}`` and paired with
    ``z ^ w`` through ``(eta^eta)(u^v, z^w) = eta(u,z)eta(v,w) - eta(u,w)eta(v,z)``,
    i.e. ``(eta C eta)[z, w]``.
    """
    N = R.N
    eta_inv = exact_matrix(linalg.inverse(eta.tolist()))
    forms = {}
    for p, M in R.values.items():
        C = -mdot(M, eta_inv)
        forms[p] = mdot(mdot(eta, C), eta)
    ints = _integerize(forms) if forms else {}
    zero = _izeros(N)
    for p in linalg.pairs(N):
        Fp = ints.get(p, zero)
        for q in linalg.pairs(N):
            if q <= p:
                continue
            Fq = ints.get(q, zero)
            if Fp[q[0], q[1]] != Fq[p[0], p[1]]:
                return (p, q)
    return None


def ri_defect(R: CurvatureTensor, structures: Sequence[np.ndarray]) -> Optional[Tuple[int, int, int]]:
    """Violation of ``R(I_a X, Y) = -R(X, I_a Y)`` on basis vectors: ``(alpha, X, Y)``."""
    N = R.N
    for alpha, Ia in enumerate(structures, start=1):
        Ii = _int_matrix(Ia)
        cols = [[(k, Ii[k, x]) for k in range(N) if Ii[k, x]] for x in range(N)]
        for x in range(N):
            for y in range(x, N):
                acc = _izeros(N)
                for k, c in cols[x]:
                    acc = acc + R.ivalue(k, y) * c
                for k, c in cols[y]:
                    acc = acc + R.ivalue(x, k) * c
                if any(acc.flat):
                    return (alpha, x, y)
    return None


def skew_defect(R: CurvatureTensor, eta: np.ndarray) -> Optional[Pair]:
    ieta = _int_matrix(eta)
    for p, M in R.integer_form().items():
        if any((M.T.dot(ieta) + ieta.dot(M)).flat):
            return p
    return None


def parabolic_vanishing_defect(R: CurvatureTensor, n: int) -> Optional[str]:
    """Relations forced by orthogonality to ``sp(1,n+1)_{Hp}``.

    ``R(q,iq) = -R(jq,kq)``, ``R(q,jq) = R(iq,kq)``, ``R(q,kq) = -R(iq,jq)`` and
    ``R(I_r p, I_s p) = R(I_r p, X) = 0``.
    """
    q = 4 * n + 4
    checks = [((q, q + 1), (q + 2, q + 3), -1, "R(q,iq) = -R(jq,kq)"),
              ((q, q + 2), (q + 1, q + 3), 1, "R(q,jq) = R(iq,kq)"),
              ((q, q + 3), (q + 1, q + 2), -1, "R(q,kq) = -R(iq,jq)")]
    for a, b, s, label in checks:
        if not is_zero(R.value(*a) - R.value(*b) * s):
            return label
    for r in range(4):
        for y in range(4 * n + 4):
            if y != r and not is_zero(R.value(r, y)):
                return f"R(basis {r}, basis {y}) != 0"
    return None


@dataclass
class IdentityReport:
    results: Dict[str, bool]
    violations: Dict[str, object]

    @property
    def all_pass(self) -> bool:
        return all(self.results.values())

    def __bool__(self) -> bool:
        return self.all_pass

    def to_json(self) -> dict:
        return {"results": dict(self.results),
                "violations": {k: repr(v) for k, v in self.violations.items()}}


def check_curvature_identities(R: CurvatureTensor, space=None, eta: Optional[np.ndarray] = None,
                               structures: Optional[Sequence[np.ndarray]] = None,
                               generators: Optional[Sequence[np.ndarray]] = None,
                               parabolic: Optional[bool] = None) -> IdentityReport:
    """Run the identity suite exactly on all basis tuples.

    Bianchi, eta-skewness, the pair symmetry ``eta(R(u,v)z,w) = eta(R(z,w)u,v)``
    and its bivector form always; ``R(I_a X, Y) = -R(X, I_a Y)`` when complex
    structures are known; membership when ``generators`` are given; and the
    parabolic vanishing relations when the ambient is ``H^{1,n+1}``.
    """
    if space is not None:
        eta = space.eta if eta is None else eta
        structures = space.complex_structures if structures is None else structures
        if parabolic is None:
            parabolic = R.N == space.N
    if eta is None:
        raise CurvatureError("eta (or a space) is required")
    checks = {
        "bianchi": lambda: bianchi_defect(R),
        "skew": lambda: skew_defect(R, eta),
        "star": lambda: star_defect(R, eta),
        "symR": lambda: symR_defect(R, eta),
    }
    if structures is not None:
        checks["RI"] = lambda: ri_defect(R, structures)
    if generators is not None:
        checks["membership"] = lambda: None if tensor_in_algebra(R, generators) else "outside g"
    if parabolic and space is not None:
        checks["parabolic_vanishing"] = lambda: parabolic_vanishing_defect(R, space.n)
    results, violations = {}, {}
    for name, fn in checks.items():
        bad = fn()
        results[name] = bad is None
        if bad is not None:
            violations[name] = bad
    return IdentityReport(results, violations)


# ---------------------------------------------------------------------------
# Berger

@dataclass
class BergerResult:
    is_berger: bool
    span_dim: int
    dim_g: int
    dim_R: int
    space: CurvatureSpace = field(repr=False)

    def __bool__(self) -> bool:
        return self.is_berger


def berger_check(g, eta: Optional[np.ndarray] = None) -> BergerResult:
    """``L(R(g)) = g``: the images of all curvature tensors span the algebra."""
    Rg = solve_R(g, eta)
    span = Rg.image_span_dim()
    return BergerResult(span == Rg.gdim, span, Rg.gdim, Rg.dim, Rg)
