"""Exact quaternions, quaternionic matrices and their realification.

Coordinates are *left* coordinates: a vector of ``H^m`` is the column
``(X_1, ..., X_m)`` with ``X = sum X_t e_t``, scalars acting on the left.
A quaternionic matrix ``A`` acts only through :func:`op_apply`,
``(Op(A) X)_s = sum_t X_t A_st``, which is H-linear.  On a single
coordinate this is right multiplication, which is why :func:`realify`
produces right-multiplication blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

Scalar = Fraction
Number = Union[int, Fraction]


def as_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to :class:`Fraction`."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or 'p/q'")
    return Fraction(x)


@dataclass(frozen=True)
class Quat:
    """Quaternion ``c0 + c1 i + c2 j + c3 k`` with rational coefficients."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c0", "c1", "c2", "c3"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @classmethod
    def coerce(cls, x) -> "Quat":
        if isinstance(x, Quat):
            return x
        if isinstance(x, (tuple, list)):
            return cls(*x)
        return cls(as_scalar(x))

    @property
    def coeffs(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2, self.c3)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other) -> "Quat":
        o = Quat.coerce(other)
        return Quat(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __neg__(self) -> "Quat":
        return Quat(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other) -> "Quat":
        return self + (-Quat.coerce(other))

    def __rsub__(self, other) -> "Quat":
        return Quat.coerce(other) - self

    def __mul__(self, other) -> "Quat":
        if isinstance(other, (int, Fraction)):
            return Quat(self.c0 * other, self.c1 * other, self.c2 * other, self.c3 * other)
        if not isinstance(other, Quat):
            return NotImplemented
        a0, a1, a2, a3 = self.coeffs
        b0, b1, b2, b3 = other.coeffs
        return Quat(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other) -> "Quat":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other) -> "Quat":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * Quat.coerce(other).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Quat(other)
        if not isinstance(other, Quat):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def conj(self) -> "Quat":
        return Quat(self.c0, -self.c1, -self.c2, -self.c3)

    def norm2(self) -> Fraction:
        return self.c0 ** 2 + self.c1 ** 2 + self.c2 ** 2 + self.c3 ** 2

    def inverse(self) -> "Quat":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj() * (Fraction(1) / n)

    def re(self) -> Fraction:
        return self.c0

    def im(self) -> "Quat":
        return Quat(0, self.c1, self.c2, self.c3)

    def is_imaginary(self) -> bool:
        return self.c0 == 0

    def __repr__(self) -> str:
        terms = []
        for c, u in zip(self.coeffs, ("", "i", "j", "k")):
            if c:
                terms.append(f"{c}{u}" if u == "" or c not in (1, -1) else ("-" if c == -1 else "") + u)
        if not terms:
            return "Quat(0)"
        s = " + ".join(terms).replace("+ -", "- ")
        return f"Quat({s})"


ZERO = Quat()
ONE = Quat(1)
I = Quat(0, 1)
J = Quat(0, 0, 1)
K = Quat(0, 0, 0, 1)
UNITS = (ONE, I, J, K)


def quat_arith(x: Quat, y: Quat) -> dict:
    """The whole arithmetic surface on one pair: product, sum, conjugates, parts."""
    return {
        "product": x * y,
        "sum": x + y,
        "conj_x": x.conj(),
        "re_x": x.re(),
        "im_x": x.im(),
    }


@dataclass(frozen=True)
class QVector:
    """Column of left coordinates in ``H^m``."""

    coords: Tuple[Quat, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Quat.coerce(c) for c in self.coords))

    @classmethod
    def zeros(cls, m: int) -> "QVector":
        return cls((ZERO,) * m)

    @classmethod
    def basis(cls, m: int, t: int, unit: Quat = ONE) -> "QVector":
        """``unit * e_t`` (0-based ``t``)."""
        return cls(tuple(unit if s == t else ZERO for s in range(m)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, t: int) -> Quat:
        return self.coords[t]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "QVector") -> "QVector":
        _check_dim(self.dim, other.dim)
        return QVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QVector") -> "QVector":
        _check_dim(self.dim, other.dim)
        return QVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self.coords))

    def scale(self, a) -> "QVector":
        """Left scalar multiplication ``a X``."""
        a = Quat.coerce(a)
        return QVector(tuple(a * x for x in self.coords))

    def __rmul__(self, a) -> "QVector":
        if isinstance(a, (int, Fraction, Quat)):
            return self.scale(a)
        return NotImplemented

    def __bool__(self) -> bool:
        return any(self.coords)

    def to_real(self) -> List[Fraction]:
        """Coordinates in ``R^{4m}``, ordered ``x_{t,0..3}`` per coordinate."""
        return [c for q in self.coords for c in q.coeffs]

    @classmethod
    def from_real(cls, vec: Sequence) -> "QVector":
        if len(vec) % 4:
            raise ValueError("real vector length must be a multiple of 4")
        return cls(tuple(Quat(*vec[4 * t:4 * t + 4]) for t in range(len(vec) // 4)))


def _check_dim(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} != {b}")


@dataclass(frozen=True)
class QMatrix:
    """Quaternionic matrix; acts on :class:`QVector` only via :func:`op_apply`."""

    entries: Tuple[Tuple[Quat, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Quat.coerce(x) for x in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, rows: int, cols: int = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, m: int) -> "QMatrix":
        return cls.scalar(m, ONE)

    @classmethod
    def scalar(cls, m: int, a) -> "QMatrix":
        a = Quat.coerce(a)
        return cls(tuple(tuple(a if s == t else ZERO for t in range(m)) for s in range(m)))

    @classmethod
    def unit(cls, m: int, s: int, t: int, value=ONE) -> "QMatrix":
        value = Quat.coerce(value)
        return cls(tuple(tuple(value if (a, b) == (s, t) else ZERO for b in range(m))
                         for a in range(m)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, st: Tuple[int, int]) -> Quat:
        s, t = st
        return self.entries[s][t]

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(tuple(tuple(a + b for a, b in zip(r1, r2))
                             for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __neg__(self) -> "QMatrix":
        return QMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c: Number) -> "QMatrix":
        """Multiply every entry by a *real* scalar."""
        c = as_scalar(c)
        return QMatrix(tuple(tuple(a * c for a in r) for r in self.entries))

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.entries)))

    def conj(self) -> "QMatrix":
        return QMatrix(tuple(tuple(a.conj() for a in r) for r in self.entries))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        """Plain matrix product with entries multiplied in written order."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return QMatrix(tuple(tuple(_dot(r, c) for c in cols) for r in self.entries))

    def compose(self, other: "QMatrix") -> "QMatrix":
        """Matrix of ``Op(self) o Op(other)``, i.e. ``(other^t self^t)^t``."""
        return (other.transpose() @ self.transpose()).transpose()

    def __bool__(self) -> bool:
        return any(any(r) for r in self.entries)

    def block(self, row0: int, col0: int, nrows: int, ncols: int) -> "QMatrix":
        return QMatrix(tuple(r[col0:col0 + ncols] for r in self.entries[row0:row0 + nrows]))

    def to_real(self) -> List[Fraction]:
        """Flat real coordinates (row-major, 4 per entry)."""
        return [c for r in self.entries for q in r for c in q.coeffs]

    @classmethod
    def from_real(cls, vec: Sequence, rows: int, cols: int = None) -> "QMatrix":
        cols = rows if cols is None else cols
        q = [Quat(*vec[4 * i:4 * i + 4]) for i in range(rows * cols)]
        return cls(tuple(tuple(q[s * cols:(s + 1) * cols]) for s in range(rows)))

    def __repr__(self) -> str:
        return "QMatrix(" + repr([list(r) for r in self.entries]) + ")"


def _dot(r: Iterable[Quat], c: Iterable[Quat]) -> Quat:
    acc = ZERO
    for a, b in zip(r, c):
        if a and b:
            acc = acc + a * b
    return acc


def op_apply(A: QMatrix, X: QVector) -> QVector:
    """``Op(A) X = (X^t A^t)^t``: ``(Op(A) X)_s = sum_t X_t A_st``."""
    if A.cols != X.dim:
        raise ValueError(f"dimension mismatch: matrix has {A.cols} columns, vector {X.dim}")
    return QVector(tuple(_dot(X.coords, row) for row in A.entries))


def block_diag(*blocks: QMatrix) -> QMatrix:
    m = sum(b.rows for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.entries:
            rows.append((ZERO,) * off + tuple(r) + (ZERO,) * (m - off - b.cols))
        off += b.cols
    return QMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# realification

def realify_quat(c: Quat) -> np.ndarray:
    """4x4 real matrix of ``x -> x c`` on coordinates ``(x0, x1, x2, x3)``."""
    c0, c1, c2, c3 = c.coeffs
    return np.array([
        [c0, -c1, -c2, -c3],
        [c1, c0, c3, -c2],
        [c2, -c3, c0, c1],
        [c3, c2, -c1, c0],
    ], dtype=object)


def left_mult_quat(c: Quat) -> np.ndarray:
    """4x4 real matrix of ``x -> c x`` (the complex structures I_1, I_2, I_3)."""
    c0, c1, c2, c3 = c.coeffs
    return np.array([
        [c0, -c1, -c2, -c3],
        [c1, c0, -c3, c2],
        [c2, c3, c0, -c1],
        [c3, -c2, c1, c0],
    ], dtype=object)


def realify(x: Union[Quat, QMatrix]) -> np.ndarray:
    """Realify a quaternion (4x4) or a quaternionic matrix (4m x 4m blocks)."""
    if isinstance(x, Quat):
        return realify_quat(x)
    out = np.zeros((4 * x.rows, 4 * x.cols), dtype=object)
    out[...] = Fraction(0)
    for s, row in enumerate(x.entries):
        for t, a in enumerate(row):
            if a:
                out[4 * s:4 * s + 4, 4 * t:4 * t + 4] = realify_quat(a)
    return out


def left_mult(c: Quat, m: int) -> np.ndarray:
    """Real matrix of ``X -> c X`` on ``H^m``."""
    out = np.zeros((4 * m, 4 * m), dtype=object)
    out[...] = Fraction(0)
    blk = left_mult_quat(Quat.coerce(c))
    for t in range(m):
        out[4 * t:4 * t + 4, 4 * t:4 * t + 4] = blk
    return out


def complex_structures(m: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(I_1, I_2, I_3)`` on ``R^{4m}``."""
    return tuple(left_mult(u, m) for u in (I, J, K))


def exact_matrix(rows: Sequence[Sequence]) -> np.ndarray:
    """Object array of Fractions from nested rows."""
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            arr[i, j] = as_scalar(v)
    return arr


def zeros(n: int, m: int = None) -> np.ndarray:
    out = np.empty((n, n if m is None else m), dtype=object)
    out[...] = Fraction(0)
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(arr: np.ndarray) -> bool:
    return not any(v != 0 for v in arr.flat)


_INT64_SAFE = 2 ** 26


def _scaled_int(A: np.ndarray):
    den = 1
    for v in A.flat:
        d = getattr(v, "denominator", 1)
        if d != 1:
            den = den * d // _gcd(den, d)
    ints = np.empty(A.shape, dtype=object)
    big = False
    for idx, v in np.ndenumerate(A):
        iv = int(v * den)
        ints[idx] = iv
        if abs(iv) >= _INT64_SAFE:
            big = True
    return (ints if big else ints.astype(np.int64)), den


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def mdot(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of rational object matrices.

    Both factors are scaled to integers so the product runs in machine
    integers whenever entries are small; results are exact Fractions.
    """
    ia, da = _scaled_int(A)
    ib, db = _scaled_int(B)
    if ia.dtype == np.int64 and ib.dtype == np.int64 and A.shape[-1] <= 1024:
        prod = ia.dot(ib)
    else:
        prod = ia.astype(object).dot(ib.astype(object))
    den = da * db
    out = np.empty(prod.shape, dtype=object)
    for idx, v in np.ndenumerate(prod):
        out[idx] = Fraction(int(v), den)
    return out
