"""``holonomy-lab``: build algebras, run the exact solvers, print JSON reports.

Every report is deterministic for identical inputs (timings are only added
with ``--timings``).  The exit status is 0 exactly when every check the
command performed came out as expected; otherwise it is 1, and 2 for
unusable input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .curvature import (CurvatureError, berger_check, check_curvature_identities, solve_P,
                        solve_R)
from .families import (COUNTEREXAMPLES, FAMILIES, H0_CHOICES, FamilyError, FamilySpec,
                       LprimeBlock, family_g, minimal_specs)
from .hermitian import SpaceError, build_A, build_B, decompose_L, make_space, rho_closure
from .parabolic import AlgebraError, full_parabolic, sp_basis
from .prop1 import parameter_map_report, spn_generators
from .quat import I, J, K, QMatrix, exact_matrix
from . import serialize as ser
from .symmetric import (SymmetricPairError, change_base_q, d_prime_by_conjugation,
                        esymS_solutions, exemplar_n2, exemplar_params, invariant_tensors,
                        is_symmetric_pair, n1_subspaces, read_blocks, translation_algebra)
from .prop1 import prop1_construct


class UsageError(Exception):
    pass


def threads() -> int:
    """Worker cap from ``HOLONOMY_LAB_THREADS`` (default 1)."""
    raw = os.environ.get("HOLONOMY_LAB_THREADS", "1")
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"HOLONOMY_LAB_THREADS must be a positive integer, got {raw!r}") from None
    if v < 1:
        raise UsageError("HOLONOMY_LAB_THREADS must be at least 1")
    return v


# ---------------------------------------------------------------------------
# building the algebra from flags

def parse_lprime(text: Optional[str], start: int) -> List[LprimeBlock]:
    """``"B2"``, ``"B2+B3"``; a trailing ``s`` selects the swapped generators."""
    if not text:
        return []
    out, offset = [], start
    for tok in text.replace(",", "+").split("+"):
        tok = tok.strip()
        swapped = tok.endswith("s")
        body = tok[:-1] if swapped else tok
        if not body.startswith("B") or not body[1:].isdigit():
            raise UsageError(f"--Lprime: cannot read block {tok!r}; write B<l>, e.g. B2 or B2+B3")
        l = int(body[1:])
        out.append(LprimeBlock(l, offset, swapped))
        offset += l
    return out


def spec_from_flags(a) -> FamilySpec:
    f = a.family
    n = a.n if a.n is not None else 1
    m = a.m if a.m is not None else (n if f in ("g1", "g2", "g3", "g4", "g5") else 0)
    blocks = parse_lprime(a.Lprime, m + a.m1 + a.m2)
    r = a.k if f == "g9" else m
    gens = sp_basis(r) if (a.h == "full" and r) else []
    nh = len(gens)
    kw = dict(family=f, n=n, m=m, m1=a.m1, m2=a.m2, k=a.k, h0=a.h0 or "0", Lprime=blocks,
              h_generators=gens)
    if f == "g1" and a.h0 is None:
        kw["h0"] = "Ri" if m < n else "sp1"
    if f == "g3" and a.h0 is None:
        kw["h0"] = "Ri" if m < n else "sp1"
    if f in ("g2", "g4"):
        kw["phi_values"] = [Fraction(0)] * nh
    if f in ("g3", "g4", "g5"):
        kw["varphi_values"] = [Fraction(0)] * nh
    if f == "g5":
        kw["alpha"] = Fraction(a.alpha)
    if f == "g8":
        if r != 1 or a.h != "full":
            raise UsageError("g8 from flags needs --m 1 and the full h = sp(1); use --spec for other data")
        kw["phi_values"] = [-I, -J, -K]
    if f == "g9":
        kw["psi_values"] = []
        if nh:
            from .quat import QVector
            kw["psi_values"] = [QVector.zeros(n)] * nh
    return FamilySpec(**kw)


def load_algebra(a):
    """(label, Subalgebra or (generators, eta), input payload for hashing)."""
    if getattr(a, "spec", None):
        spec = ser.family_spec_from_json(ser.load_file(a.spec))
        return spec.label or spec.family, family_g(spec), ser.family_spec_to_json(spec)
    if getattr(a, "raw", None):
        data = ser.load_file(a.raw)
        mats_json = data.get("matrices", []) if isinstance(data, dict) else data
        n = data.get("n") if isinstance(data, dict) else None
        mats = [ser.matrix_from_json(M) for M in mats_json]
        if n is None:
            if mats:
                N = mats[0].shape[0]
                if N % 4 or N < 8:
                    raise UsageError("raw matrices must be (4n+8) x (4n+8)")
                n = (N - 8) // 4
            else:
                n = a.n if a.n is not None else 1
        space = make_space(int(n))
        return "raw", (mats, space.eta, space.N), {"raw": [ser.matrix_to_json(M) for M in mats], "n": n}
    if getattr(a, "counterexample", None):
        n = a.n if a.n is not None else 1
        g = COUNTEREXAMPLES[a.counterexample](make_space(n))
        return a.counterexample, g, {"counterexample": a.counterexample, "n": n}
    if getattr(a, "parabolic", False):
        n = a.n if a.n is not None else 1
        return "sp(1,n+1)_Hp", full_parabolic(make_space(n)), {"parabolic": n}
    if getattr(a, "family", None):
        spec = spec_from_flags(a)
        return spec.family, family_g(spec), ser.family_spec_to_json(spec)
    raise UsageError("choose an algebra: --family, --spec, --raw, --parabolic or --counterexample")


def input_hash(payload) -> str:
    return hashlib.sha256(ser.dumps(payload).encode()).hexdigest()[:16]


def base_report(command: str, payload) -> dict:
    return {"command": command, "input_hash": input_hash(payload), "version": __version__}


def _dims(alg) -> dict:
    if isinstance(alg, tuple):
        mats, eta, N = alg
        if not mats:
            return {"dim_g": 0, "dim_R": 0, "span_dim": 0, "berger": True}
        res = berger_check(mats, eta)
    else:
        res = berger_check(alg)
    return {"dim_g": res.dim_g, "dim_R": res.dim_R, "span_dim": res.span_dim, "berger": res.is_berger,
            "_space": res.space}


# ---------------------------------------------------------------------------
# commands

def cmd_solve(a) -> dict:
    if a.parabolic and (a.n or 1) >= 2 and not a.opt_in_n2_parabolic:
        raise UsageError("the n >= 2 parabolic solve is gated; pass --opt-in-n2-parabolic")
    if a.spn:
        n = a.n if a.n is not None else 1
        space = make_space(n)
        gens = spn_generators(space)
        t0 = time.perf_counter()
        dR = solve_R(gens, space.eta_n).dim
        dP = solve_P(gens, space.eta_n).dim
        rep = base_report("solve", {"spn": n})
        rep.update({"algebra": f"sp({n})", "dim_g": len(gens), "dim_R": dR, "dim_P": dP, "ok": True})
        if a.timings:
            rep["seconds"] = round(time.perf_counter() - t0, 3)
        return rep
    t0 = time.perf_counter()
    label, alg, payload = load_algebra(a)
    rep = base_report("solve", payload)
    d = _dims(alg)
    d.pop("_space", None)
    rep.update({"algebra": label, **d, "ok": True})
    if a.parabolic:
        pm = parameter_map_report(make_space(a.n if a.n is not None else 1))
        rep["prop1"] = pm.to_json()
        rep["ok"] = pm.ok and pm.dim_R_parabolic == d["dim_R"]
    if a.timings:
        rep["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


def _s02_report(space, Rspace) -> dict:
    tensors = Rspace.tensors()
    zero = all(not read_blocks(T, space).S[0][2] for T in tensors)
    return {"S02_zero_on_R": zero, "tensors_checked": len(tensors)}


def cmd_berger(a) -> dict:
    t0 = time.perf_counter()
    label, alg, payload = load_algebra(a)
    rep = base_report("berger", payload)
    d = _dims(alg)
    Rs = d.pop("_space", None)
    expected = not bool(a.counterexample)
    rep.update({"algebra": label, **d, "expected_berger": expected})
    ok = d["berger"] == expected
    if a.counterexample:
        s02 = _s02_report(alg.space, Rs)
        rep.update(s02)
        if a.counterexample == "complex-line":
            # the non-Berger argument for this algebra runs through S02 = 0
            ok = ok and s02["S02_zero_on_R"]
    if not isinstance(alg, tuple) and getattr(alg, "compliance", None) is not None:
        rep["compliance_failures"] = alg.compliance.failures()
    rep["ok"] = ok
    if a.timings:
        rep["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


def _pair_report(g, R, space, params) -> dict:
    ok, cert = is_symmetric_pair(g, R)
    ident = check_curvature_identities(R, space)
    out = {"symmetric": ok, "dim_g": g.dim, "identities": ident.to_json(), "certificate": cert.to_json()}
    if params is not None:
        bc = change_base_q(params, space)
        oracle = d_prime_by_conjugation(R, space, bc.X)
        out["base_change"] = {
            "X": ser.qvector_to_json(bc.X),
            "D01_D02_zero": bc.d01_d02_zero,
            "all_D_zero": bc.all_zero,
            "matches_conjugation": oracle == bc.D_prime,
        }
        ok = ok and bc.all_zero and oracle == bc.D_prime
    out["ok"] = ok and ident.all_pass
    return out


def _nonexistence_n1() -> dict:
    space = make_space(1)
    out = {}
    for name, L in n1_subspaces().items():
        sols = esymS_solutions(space, L)
        inv = invariant_tensors(translation_algebra(space, L))
        out[name] = {"esymS_solution_dim": len(sols), "dim_R": inv.dim_R,
                     "invariant_dim": inv.dim_invariant, "S_zero": inv.S_zero}
    out["ok"] = all(v["esymS_solution_dim"] == 0 and v["S_zero"] for v in out.values())
    return out


def cmd_symmetric(a) -> dict:
    if a.nonexistence_n1:
        rep = base_report("symmetric", {"nonexistence": 1})
        res = _nonexistence_n1()
        rep.update(res)
        return rep
    if a.action == "verify":
        if not a.spec or not a.params:
            raise UsageError("symmetric verify needs --spec FAMILY.json and --params PARAMS.json")
        spec = ser.family_spec_from_json(ser.load_file(a.spec))
        space = spec.space()
        params = ser.prop1_params_from_json(ser.load_file(a.params), spec.n)
        g = family_g(spec, space)
        R = prop1_construct(params, space)
        rep = base_report("symmetric", {"spec": ser.family_spec_to_json(spec),
                                        "params": ser.prop1_params_to_json(params, spec.n)})
        rep.update(_pair_report(g, R, space, None))
        return rep
    if a.exemplar == "n2":
        pair = exemplar_n2()
        rep = base_report("symmetric", {"exemplar": "n2"})
        rep.update(_pair_report(pair.g, pair.R, pair.space, exemplar_params()))
        return rep
    raise UsageError("symmetric: use --exemplar n2, --nonexistence-n1, or 'verify --spec --params'")


def _family_row(name: str) -> dict:
    spec = minimal_specs()[name]
    g = family_g(spec)
    res = berger_check(g)
    return {"family": name, "label": spec.label, "n": spec.n, "dim_g": g.dim, "dim_R": res.dim_R,
            "span_dim": res.span_dim, "berger": res.is_berger}


def cmd_families(a) -> dict:
    if a.all:
        if not a.minimal:
            raise UsageError("families --all currently requires --minimal")
        workers = threads()
        if workers > 1:
            with ProcessPoolExecutor(max_workers=min(workers, len(FAMILIES))) as ex:
                rows = list(ex.map(_family_row, FAMILIES))
        else:
            rows = [_family_row(f) for f in FAMILIES]
        rep = base_report("families", {"all": "minimal"})
        rep["families"] = rows
        rep["ok"] = all(r["berger"] for r in rows)
        return rep
    if a.family:
        if a.minimal:
            spec = minimal_specs()[a.family]
        elif a.spec:
            spec = ser.family_spec_from_json(ser.load_file(a.spec))
        else:
            spec = spec_from_flags(a)
        g = family_g(spec)
        rep = base_report("families", ser.family_spec_to_json(spec))
        rep.update({"family": spec.family, "spec": ser.family_spec_to_json(spec), "dim_g": g.dim,
                    "projection_dims": g.projection_dims(),
                    "compliance_failures": g.compliance.failures(), "ok": True})
        if a.export:
            rep["basis"] = ser.subalgebra_to_json(g)
        return rep
    rep = base_report("families", {"list": True})
    rep["families"] = [{"family": k, "label": s.label} for k, s in minimal_specs().items()]
    rep["ok"] = True
    return rep


def _subspace_from_flags(a):
    if a.L:
        return ser.subspace_from_json(ser.load_file(a.L))
    if a.block:
        kind, size = a.block[0], int(a.block[1:])
        if kind == "B":
            return build_B(size)
        if kind == "A":
            return build_A(size)
        raise UsageError("--block is B<l> or A<2l-1>")
    blocks = parse_lprime(a.Lprime, a.m + a.m1 + a.m2)
    n = a.n if a.n is not None else a.m + a.m1 + a.m2 + sum(b.l for b in blocks)
    return ser.subspace_from_json({"type": "L", "m": a.m, "m1": a.m1, "m2": a.m2, "n": n,
                                   "Lprime": [ser.lprime_block_to_json(b) for b in blocks]})


def cmd_decompose(a) -> dict:
    L = _subspace_from_flags(a)
    dec = decompose_L(L)
    rho = rho_closure(L)
    rep = base_report("decompose", ser.subspace_to_json(L))
    rep.update({"n": L.ambient_n, "dim_L": L.dim,
                "parts": {k: v.dim for k, v in zip(("L1", "L5", "L4c", "Lrest"), dec.parts())},
                "rho_dim": rho.dim, "rho_equals_L": rho == L, "ok": True})
    if a.export:
        rep["part_bases"] = {k: ser.subspace_to_json(v)
                             for k, v in zip(("L1", "L5", "L4c", "Lrest"), dec.parts())}
        rep["rho"] = ser.subspace_to_json(rho)
    return rep


# ---------------------------------------------------------------------------
# output

def to_csv(rep: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rows = rep.get("families")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        keys = sorted({k for r in rows for k in r})
        w.writerow(keys)
        for r in rows:
            w.writerow([r.get(k, "") for k in keys])
        return buf.getvalue()
    w.writerow(["key", "value"])
    for k in sorted(rep):
        v = rep[k]
        if isinstance(v, dict):
            for kk in sorted(v):
                if not isinstance(v[kk], (dict, list)):
                    w.writerow([f"{k}.{kk}", v[kk]])
        elif not isinstance(v, list):
            w.writerow([k, v])
    return buf.getvalue()


def _add_algebra_flags(p):
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--m1", type=int, default=0)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--k", type=int, default=0, help="size of H^k (g9)")
    p.add_argument("--Lprime", help="B(l) blocks of L', e.g. B2 or B2+B3; suffix s swaps generators")
    p.add_argument("--h0", choices=H0_CHOICES)
    p.add_argument("--h", choices=("full", "zero"), default="full",
                   help="h = sp(m) (full) or h = 0; maps default to zero")
    p.add_argument("--alpha", default="1", help="g5 parameter")
    p.add_argument("--spec", help="FamilySpec JSON file")


def _add_output_flags(p):
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timings", action="store_true", help="add wall-clock seconds (non-deterministic)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holonomy-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"holonomy-lab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="dimension of R(g) and the span of its images")
    _add_algebra_flags(p)
    p.add_argument("--raw", help="JSON list of realified matrices (or {'n':..,'matrices':[..]})")
    p.add_argument("--parabolic", action="store_true", help="the full sp(1,n+1)_Hp, with the parameter map")
    p.add_argument("--spn", action="store_true", help="dims of sp(n), R(sp(n)), P(sp(n))")
    p.add_argument("--opt-in-n2-parabolic", action="store_true",
                   help="allow n >= 2 with --parabolic (n = 2: about 30 s, peak memory under 100 MB)")
    _add_output_flags(p)

    p = sub.add_parser("berger", help="is g spanned by the images of R(g)?")
    _add_algebra_flags(p)
    p.add_argument("--raw")
    p.add_argument("--parabolic", action="store_true")
    p.add_argument("--counterexample", choices=sorted(COUNTEREXAMPLES))
    _add_output_flags(p)

    p = sub.add_parser("symmetric", help="symmetric-pair checks")
    p.add_argument("action", nargs="?", choices=("verify",))
    p.add_argument("--exemplar", choices=("n2",))
    p.add_argument("--nonexistence-n1", action="store_true")
    p.add_argument("--spec")
    p.add_argument("--params")
    _add_output_flags(p)

    p = sub.add_parser("families", help="construct g1..g9")
    _add_algebra_flags(p)
    p.add_argument("--all", action="store_true")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--export", action="store_true", help="include the realified basis")
    _add_output_flags(p)

    p = sub.add_parser("decompose", help="split L and compute rho(L)")
    p.add_argument("--L", help="subspace JSON file")
    p.add_argument("--block", help="a single block, B<l> or A<2l-1>")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--m1", type=int, default=0)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--Lprime")
    p.add_argument("--export", action="store_true")
    _add_output_flags(p)
    return ap


COMMANDS = {"solve": cmd_solve, "berger": cmd_berger, "symmetric": cmd_symmetric,
            "families": cmd_families, "decompose": cmd_decompose}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        threads()
        rep = COMMANDS[args.command](args)
    except (UsageError, ser.SpecParseError) as exc:
        print(f"holonomy-lab: {exc}", file=sys.stderr)
        return 2
    except (FamilyError, SpaceError, AlgebraError, CurvatureError, SymmetricPairError) as exc:
        print(f"holonomy-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = to_csv(rep) if args.format == "csv" else ser.dumps(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.get("ok", False) else 1


if __name__ == "__main__":
    sys.exit(main())
