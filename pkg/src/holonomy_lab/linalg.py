"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction` (or plain ``int``);
there is no rank tolerance anywhere.  Large sparse systems go through
:class:`SparseEchelon`, which keeps its rows as integer dictionaries and
eliminates fraction-free; small dense problems use the helpers at the bottom.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

SparseRow = Dict[int, int]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def integer_row(row: Mapping[int, object]) -> SparseRow:
    """Scale a rational sparse row to a primitive integer row.

    The result has coprime integer entries and a positive leading
    (smallest-column) coefficient.  Zero entries are dropped.
    """
    den = 1
    items = []
    for c, v in row.items():
        if v == 0:
            continue
        v = Fraction(v)
        den = _lcm(den, v.denominator)
        items.append((c, v))
    if not items:
        return {}
    out = {c: int(v * den) for c, v in items}
    return _normalize(out)


def _normalize(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


class SparseEchelon:
    """Incremental row echelon form of a sparse rational system.

    Each stored row has its pivot at its smallest column and contains no
    other pivot column smaller than the ones reduced so far.  Rows are kept
    as primitive integer vectors, so elimination never creates fractions.

    Parameters
    ----------
    ncols : int
        Number of unknowns.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: Dict[int, SparseRow] = {}
        self._reduced = False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: SparseRow) -> SparseRow:
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            rc = row.get(c)
            if rc is None:
                continue
            prow = pivots[c]
            pc = prow[c]
            g = gcd(pc, rc)
            a, b = pc // g, rc // g
            if a != 1:
                row = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                nv = row.get(k, 0) - b * v
                if nv:
                    if k not in row and k in pivots and k not in seen:
                        heapq.heappush(heap, k)
                    row[k] = nv
                else:
                    row.pop(k, None)
            if not row:
                return row
        return _normalize(row) if row else row

    def reduce(self, row: Mapping[int, object]) -> SparseRow:
        """Return the (integer, scaled) remainder of ``row`` modulo the span."""
        r = integer_row(row)
        if not r:
            return r
        return self._reduce(r)

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        self._reduced = False
        return True

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(row)

    def _back_substitute(self) -> None:
        if self._reduced:
            return
        pivots = self.pivots
        for c in sorted(pivots, reverse=True):
            row = pivots[c]
            others = [k for k in row if k != c and k in pivots]
            if not others:
                continue
            for k in sorted(others):
                rk = row.get(k)
                if rk is None:
                    continue
                prow = pivots[k]
                pk = prow[k]
                g = gcd(pk, rk)
                a, b = pk // g, rk // g
                if a != 1:
                    row = {kk: a * v for kk, v in row.items()}
                for kk, v in prow.items():
                    nv = row.get(kk, 0) - b * v
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            pivots[c] = _normalize(row)
        self._reduced = True

    def free_columns(self) -> List[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def nullspace(self) -> List[Dict[int, Fraction]]:
        """Basis of the solution space of ``row . x = 0`` for all rows.

        One vector per free column ``f``: ``x_f = 1``, other free
        variables zero.  Vectors are sparse ``{col: Fraction}``.
        """
        self._back_substitute()
        free = self.free_columns()
        basis: Dict[int, Dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
        for c, row in self.pivots.items():
            pc = row[c]
            for k, v in row.items():
                if k != c:
                    basis[k][c] = Fraction(-v, pc)
        return [basis[f] for f in free]

    def solve_particular(self, rhs_col: int) -> Optional[Dict[int, Fraction]]:
        """Treat column ``rhs_col`` as an augmented right-hand side.

        The system was assembled as ``A x - b t = 0`` with ``t`` living in
        ``rhs_col``; returns a solution with ``t = 1`` or None when the
        system is inconsistent.
        """
        self._back_substitute()
        if rhs_col in self.pivots:
            return None
        x: Dict[int, Fraction] = {}
        for c, row in self.pivots.items():
            v = row.get(rhs_col)
            if v:
                x[c] = Fraction(-v, row[c])
        return x


def sparse_nullspace(rows: Iterable[Mapping[int, object]], ncols: int) -> List[Dict[int, Fraction]]:
    ech = SparseEchelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.nullspace()


# ---------------------------------------------------------------------------
# dense helpers

def to_sparse(vec: Sequence[object]) -> Dict[int, object]:
    return {i: v for i, v in enumerate(vec) if v != 0}


def to_dense(vec: Mapping[int, object], n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for i, v in vec.items():
        out[i] = Fraction(v)
    return out


def rank(vectors: Iterable[Sequence[object]]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    ech = SparseEchelon(len(vectors[0]))
    for v in vectors:
        ech.add(to_sparse(v))
    return ech.rank


def nullspace(matrix: Sequence[Sequence[object]], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Dense nullspace of ``matrix`` (list of rows)."""
    if ncols is None:
        ncols = len(matrix[0])
    ns = sparse_nullspace((to_sparse(r) for r in matrix), ncols)
    return [to_dense(v, ncols) for v in ns]


def independent_subset(vectors: Sequence[Sequence[object]]) -> List[int]:
    """Indices of a maximal independent subfamily, greedy in input order."""
    if not vectors:
        return []
    ech = SparseEchelon(len(vectors[0]))
    return [i for i, v in enumerate(vectors) if ech.add(to_sparse(v))]


def span_basis(vectors: Sequence[Sequence[object]]) -> List[List[Fraction]]:
    """Reduced row echelon basis of the span (canonical for equal spans)."""
    if not vectors:
        return []
    n = len(vectors[0])
    ech = SparseEchelon(n)
    for v in vectors:
        ech.add(to_sparse(v))
    ech._back_substitute()
    out = []
    for c in sorted(ech.pivots):
        row = ech.pivots[c]
        pc = row[c]
        out.append(to_dense({k: Fraction(v, pc) for k, v in row.items()}, n))
    return out


def solve(matrix: Sequence[Sequence[object]], rhs: Sequence[object]) -> Optional[List[Fraction]]:
    """One exact solution of ``matrix @ x = rhs`` (free variables zero)."""
    ncols = len(matrix[0])
    ech = SparseEchelon(ncols + 1)
    for row, b in zip(matrix, rhs):
        r = to_sparse(row)
        if b != 0:
            r[ncols] = -Fraction(b)
        ech.add(r)
    x = ech.solve_particular(ncols)
    if x is None:
        return None
    return to_dense(x, ncols)


def inverse(matrix: Sequence[Sequence[object]]) -> List[List[Fraction]]:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def in_span(vector: Sequence[object], basis: Sequence[Sequence[object]]) -> bool:
    if not basis:
        return all(v == 0 for v in vector)
    ech = SparseEchelon(len(vector))
    for b in basis:
        ech.add(to_sparse(b))
    return ech.contains(to_sparse(vector))


def coordinates(vector: Sequence[object], basis: Sequence[Sequence[object]]) -> Optional[List[Fraction]]:
    """Coefficients ``c`` with ``sum c_i basis_i == vector`` (None if outside)."""
    if not basis:
        return [] if all(v == 0 for v in vector) else None
    cols = list(zip(*basis))
    return solve([list(r) for r in cols], list(vector))


def intersect(u: Sequence[Sequence[object]], v: Sequence[Sequence[object]]) -> List[List[Fraction]]:
    """Basis of span(u) ∩ span(v) via the kernel of [u; -v]."""
    if not u or not v:
        return []
    n = len(u[0])
    rows = []
    # unknowns: coefficients on u then on v
    m = len(u) + len(v)
    for i in range(n):
        rows.append([Fraction(x[i]) for x in u] + [-Fraction(y[i]) for y in v])
    ker = nullspace(rows, m)
    out = []
    for k in ker:
        vec = [sum((k[j] * Fraction(u[j][i]) for j in range(len(u))), Fraction(0)) for i in range(n)]
        out.append(vec)
    return span_basis(out)


def mat_rank_dense(matrix: Sequence[Sequence[object]]) -> int:
    return rank(matrix)


def pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]
