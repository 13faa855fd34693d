"""The exact eliminator against sympy on small random rational systems."""

from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from holonomy_lab import linalg

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=max_rows))


def _sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


@given(matrices())
def test_rank_matches_sympy(rows):
    assert linalg.rank(rows) == _sym(rows).rank()


@given(matrices())
def test_nullspace_is_exact_kernel(rows):
    ncols = len(rows[0])
    ker = linalg.nullspace(rows, ncols)
    assert len(ker) == ncols - _sym(rows).rank()
    for v in ker:
        for r in rows:
            assert sum((a * b for a, b in zip(r, v)), Fraction(0)) == 0


@given(matrices())
def test_sparse_echelon_agrees_with_dense(rows):
    ech = linalg.SparseEchelon(len(rows[0]))
    for r in rows:
        ech.add(linalg.to_sparse(r))
    assert ech.rank == linalg.rank(rows)
    for r in rows:
        assert ech.contains(linalg.to_sparse(r))


@given(matrices(4, 4), st.lists(entries, min_size=4, max_size=4))
def test_solve_returns_a_solution_when_one_exists(rows, x):
    n = len(rows[0])
    x = x[:n]
    rhs = [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]
    sol = linalg.solve(rows, rhs)
    assert sol is not None
    assert [sum((a * b for a, b in zip(r, sol)), Fraction(0)) for r in rows] == rhs


def test_inconsistent_system():
    assert linalg.solve([[1, 1], [2, 2]], [1, 3]) is None


def test_inverse_roundtrip():
    M = [[Fraction(2), Fraction(1)], [Fraction(1, 3), Fraction(-1)]]
    Minv = linalg.inverse(M)
    prod = [[sum(M[i][k] * Minv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]


def test_intersection_of_planes():
    u = [[1, 0, 0], [0, 1, 0]]
    v = [[0, 1, 0], [0, 0, 1]]
    inter = linalg.intersect(u, v)
    assert len(inter) == 1 and linalg.in_span([0, 1, 0], inter)
