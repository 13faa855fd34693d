"""The eight acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (visible without
``-s``) before asserting, so a run of this module doubles as a checklist.
All comparisons are exact; the wall-clock budgets are asserted too.
"""

import time
from itertools import combinations

import pytest

from holonomy_lab.curvature import berger_check, check_curvature_identities, solve_P, solve_R
from holonomy_lab.families import complex_line_algebra, lemma1_algebra, minimal_family, minimal_specs
from holonomy_lab.hermitian import build_A, build_B, make_space, rho_closure
from holonomy_lab.parabolic import (bracket, commutes_with_structure, f_projection, full_parabolic,
                                    grading_decompose, grading_element, is_eta_skew,
                                    matrix_commutator, parabolic_basis)
from holonomy_lab.prop1 import lp_defects, parameter_map_report, spn_generators
from holonomy_lab.quat import mdot
from holonomy_lab.symmetric import (act_on_R, change_base_q, esymS_solutions, exemplar_n2,
                                    exemplar_params, image_span_rank, invariant_tensors,
                                    n1_subspaces, read_blocks, translation_algebra)


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail, seconds):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail} ({seconds:.1f} s)")
        return ok
    return emit


def test_criterion_1_bracket_oracle(verdict):
    t0 = time.perf_counter()
    counts, ok = [], True
    for n in (1, 2):
        basis = parabolic_basis(make_space(n))
        pairs = list(combinations(basis, 2))
        counts.append(f"n={n}: {len(basis)} elements, {len(pairs)} pairs")
        ok &= all((bracket(u, v).matrix() == matrix_commutator(u, v)).all() for u, v in pairs)
        ok &= len(basis) == {1: 14, 2: 25}[n]
    dt = time.perf_counter() - t0
    assert verdict(1, ok and dt < 10, "structural bracket = matrix commutator; " + "; ".join(counts), dt)


def _prop1_check(n):
    space = make_space(n)
    rep = parameter_map_report(space)
    gens = spn_generators(space)
    dim_R_spn = solve_R(gens, space.eta[4:4 + 4 * n, 4:4 + 4 * n]).dim
    dim_P_spn = solve_P(gens, space.eta[4:4 + 4 * n, 4:4 + 4 * n]).dim
    formula = 8 + 5 + 3 * len(gens) + 8 * n + dim_R_spn + dim_P_spn
    ok = rep.ok and formula == rep.parameter_count == rep.rank == rep.dim_R_parabolic
    return ok, f"n={n}: dim R = {rep.dim_R_parabolic}, rank = {rep.rank}, count = {formula}"


def test_criterion_2_curvature_parametrization(verdict):
    t0 = time.perf_counter()
    ok1, d1 = _prop1_check(1)
    t1 = time.perf_counter() - t0
    # n = 2 is cheap enough here to run every time (well inside its budget)
    ok2, d2 = _prop1_check(2)
    dt = time.perf_counter() - t0
    ok = ok1 and ok2 and t1 < 60 and dt - t1 < 1800
    assert verdict(2, ok, f"{d1}; {d2}", dt)


def test_criterion_3_berger_positives(verdict):
    t0 = time.perf_counter()
    rows = {name: berger_check(minimal_family(name)) for name in sorted(minimal_specs())}
    dt = time.perf_counter() - t0
    ok = all(r.is_berger for r in rows.values()) and dt < 600
    detail = ", ".join(f"{k} {r.dim_g}/{r.dim_R}" for k, r in rows.items())
    assert verdict(3, ok, f"all nine families Berger (dim g/dim R: {detail})", dt)


def test_criterion_4_berger_negatives(verdict):
    t0 = time.perf_counter()
    space = make_space(1)
    lem = berger_check(lemma1_algebra(space))
    cl = berger_check(complex_line_algebra(space))
    s02_zero = all(not read_blocks(T, space).S[0][2] for T in cl.space.tensors())
    dt = time.perf_counter() - t0
    ok = not lem.is_berger and not cl.is_berger and s02_zero
    detail = (f"lemma1 algebra (dim pr_H g = 1) span {lem.span_dim} < {lem.dim_g}; complex-line algebra span "
              f"{cl.span_dim} < {cl.dim_g}, S02 = 0 on all {cl.dim_R} tensors of R(g)")
    assert verdict(4, ok, detail, dt)


def test_criterion_5_rho_closure(verdict):
    t0 = time.perf_counter()
    ok = rho_closure(build_A(3)).dim == 0 and rho_closure(build_B(1)).dim == 0
    ok &= all(rho_closure(build_B(l)) == build_B(l) for l in (2, 3, 4))
    dt = time.perf_counter() - t0
    assert verdict(5, ok and dt < 1, "rho(A(3)) = 0, rho(B(1)) = 0, rho(B(l)) = B(l) for l = 2,3,4", dt)


def test_criterion_6_symmetric_exemplar(verdict):
    t0 = time.perf_counter()
    pair = exemplar_n2()
    g, R, space = pair.g, pair.R, pair.space
    ident = check_curvature_identities(R, space, generators=g.matrices())
    lp_ok = all(v is None for v in lp_defects(exemplar_params(), space).values())
    a = ident.all_pass and lp_ok
    b = all(act_on_R(xi, R).is_zero() for xi in g.basis) and g.dim == 6
    c = image_span_rank(R) == g.dim
    bc = change_base_q(exemplar_params(), space)
    d = bc.d01_d02_zero and bc.all_zero
    dt = time.perf_counter() - t0
    detail = f"(a) identities {a}, (b) xi.R = 0 {b}, (c) span = g {c}, (d) D' = 0 {d}"
    assert verdict(6, a and b and c and d and dt < 30, detail, dt)


def test_criterion_7_no_symmetric_pair_at_n1(verdict):
    t0 = time.perf_counter()
    space = make_space(1)
    parts, ok = [], True
    for name, L in n1_subspaces(space).items():
        sols = esymS_solutions(space, L)
        inv = invariant_tensors(translation_algebra(space, L))
        ok &= not sols and inv.S_zero
        parts.append(f"L = {name}: {len(sols)} solutions, S = 0 on {inv.dim_invariant} invariant tensors")
    dt = time.perf_counter() - t0
    assert verdict(7, ok, "; ".join(parts), dt)


def test_criterion_8_structural_sanity(verdict):
    t0 = time.perf_counter()
    ok, checked = True, 0
    algebras = [minimal_family(k) for k in sorted(minimal_specs())]
    algebras += [full_parabolic(make_space(n)) for n in (1, 2)]
    for alg in algebras:
        for M in alg.matrices():
            ok &= is_eta_skew(alg.space, M) and commutes_with_structure(alg.space, M)
            checked += 1
    for n in (1, 2):
        space = make_space(n)
        basis = parabolic_basis(space)
        for u, v in combinations(basis, 2):
            A, B = f_projection(u).affine_matrix(), f_projection(v).affine_matrix()
            ok &= (mdot(A, B) - mdot(B, A) == f_projection(bracket(u, v)).affine_matrix()).all()
        one = grading_element(space)
        ok &= all(bracket(one, part) == part.scale(alpha)
                  for u in basis for alpha, part in enumerate(grading_decompose(u)))
    dt = time.perf_counter() - t0
    detail = f"{checked} matrices skew and quaternionic; f homomorphism; grading 0/1/2"
    assert verdict(8, ok and dt < 5, detail, dt)
