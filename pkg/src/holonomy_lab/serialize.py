"""JSON round trips for exact data.

Scalars are ``"p/q"`` strings (``"3"`` when the denominator is 1),
quaternions are 4-lists of scalars, real matrices are row-major nested lists.
Output is deterministic: keys sorted, fixed indentation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .curvature import CurvatureTensor, PTensor
from .families import FamilySpec, LprimeBlock
from .hermitian import RealSubspace, build_B, build_L
from .prop1 import Prop1Params
from .quat import QMatrix, QVector, Quat, exact_matrix


class SpecParseError(ValueError):
    """Malformed input; the message carries ``line:column`` when known."""


# ---------------------------------------------------------------------------
# scalars, quaternions, matrices

def scalar_to_json(x) -> str:
    return str(Fraction(x))


def scalar_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SpecParseError(f"expected a rational written as 'p/q', got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SpecParseError(f"not a rational: {s!r}") from None


def quat_to_json(q: Quat) -> List[str]:
    return [scalar_to_json(c) for c in Quat.coerce(q).coeffs]


def quat_from_json(v) -> Quat:
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return Quat(scalar_from_json(v))
    if not isinstance(v, list) or len(v) != 4:
        raise SpecParseError(f"a quaternion is a list of 4 rationals, got {v!r}")
    return Quat(*(scalar_from_json(c) for c in v))


def qvector_to_json(X: QVector) -> List[List[str]]:
    return [quat_to_json(c) for c in X.coords]


def qvector_from_json(v) -> QVector:
    if not isinstance(v, list):
        raise SpecParseError(f"a vector of H^n is a list of quaternions, got {v!r}")
    return QVector(tuple(quat_from_json(c) for c in v))


def qmatrix_to_json(A: QMatrix) -> List[List[List[str]]]:
    return [[quat_to_json(A[s, t]) for t in range(A.cols)] for s in range(A.rows)]


def qmatrix_from_json(v) -> QMatrix:
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise SpecParseError("a quaternionic matrix is a list of rows")
    return QMatrix(tuple(tuple(quat_from_json(c) for c in row) for row in v))


def matrix_to_json(M: np.ndarray) -> List[List[str]]:
    return [[scalar_to_json(c) for c in row] for row in M.tolist()]


def matrix_from_json(v) -> np.ndarray:
    if not isinstance(v, list) or not v or not all(isinstance(r, list) and len(r) == len(v[0]) for r in v):
        raise SpecParseError("a matrix is a non-empty list of equal-length rows")
    return exact_matrix([[scalar_from_json(c) for c in row] for row in v])


# ---------------------------------------------------------------------------
# subspaces

def subspace_to_json(L: RealSubspace) -> dict:
    return {"type": "span", "n": L.ambient_n, "vectors": [qvector_to_json(X) for X in L.basis]}


def subspace_from_json(d: dict) -> RealSubspace:
    """``{"type": "L", "m", "m1", "m2", "Lprime": [...]}`` or ``{"type": "span", "vectors"}``."""
    kind = _get(d, "type", str)
    if kind == "span":
        vecs = [qvector_from_json(v) for v in _get(d, "vectors", list)]
        n = d.get("n", vecs[0].dim if vecs else None)
        if n is None:
            raise SpecParseError("an empty span needs an explicit 'n'")
        if any(v.dim != n for v in vecs):
            raise SpecParseError("span vectors have different lengths")
        return RealSubspace.span(int(n), vecs)
    if kind == "L":
        m, m1, m2 = (int(d.get(k, 0)) for k in ("m", "m1", "m2"))
        blocks = [lprime_block_from_json(b) for b in d.get("Lprime", [])]
        n = int(d.get("n", m + m1 + m2 + sum(b.l for b in blocks)))
        Lp = RealSubspace.zero(n)
        for b in blocks:
            Lp = Lp + b.build(n)
        return build_L(m, m1, m2, Lp, n=n)
    raise SpecParseError(f"unknown subspace type {kind!r}; expected 'L' or 'span'")


def lprime_block_to_json(b: LprimeBlock) -> dict:
    out = {"type": "B", "l": b.l, "offset": b.offset}
    if b.swapped:
        out["swapped"] = True
    return out


def lprime_block_from_json(d: dict) -> LprimeBlock:
    if _get(d, "type", str) != "B":
        raise SpecParseError("L' blocks have type 'B'")
    return LprimeBlock(int(_get(d, "l", int)), int(d.get("offset", 0)), bool(d.get("swapped", False)))


# ---------------------------------------------------------------------------
# family specs and curvature parameters

def family_spec_to_json(s: FamilySpec) -> dict:
    out: Dict[str, Any] = {"family": s.family, "n": s.n, "m": s.m, "m1": s.m1, "m2": s.m2,
                           "k": s.k, "h0": s.h0, "alpha": scalar_to_json(s.alpha)}
    out["h_generators"] = [qmatrix_to_json(A) for A in s.h_generators]
    out["phi"] = [quat_to_json(q) for q in s.phi_values]
    out["varphi"] = [scalar_to_json(v) for v in s.varphi_values]
    out["psi"] = [qvector_to_json(v) for v in s.psi_values]
    out["U"] = [qvector_to_json(v) for v in s.U]
    out["Lprime"] = [lprime_block_to_json(b) for b in s.Lprime]
    if s.G is not None:
        out["G"] = qmatrix_to_json(s.G)
    if s.label:
        out["label"] = s.label
    return out


def family_spec_from_json(d: dict) -> FamilySpec:
    if not isinstance(d, dict):
        raise SpecParseError("a family spec is a JSON object")
    return FamilySpec(
        family=_get(d, "family", str),
        n=int(_get(d, "n", int)),
        m=int(d.get("m", 0)), m1=int(d.get("m1", 0)), m2=int(d.get("m2", 0)), k=int(d.get("k", 0)),
        h_generators=[qmatrix_from_json(A) for A in d.get("h_generators", [])],
        h0=str(d.get("h0", "0")),
        phi_values=[quat_from_json(q) for q in d.get("phi", [])],
        varphi_values=[scalar_from_json(v) for v in d.get("varphi", [])],
        psi_values=[qvector_from_json(v) for v in d.get("psi", [])],
        alpha=scalar_from_json(d.get("alpha", "0")),
        Lprime=[lprime_block_from_json(b) for b in d.get("Lprime", [])],
        U=[qvector_from_json(v) for v in d.get("U", [])],
        G=qmatrix_from_json(d["G"]) if "G" in d else None,
        label=str(d.get("label", "")),
    )


def prop1_params_to_json(p: Prop1Params, n: int) -> dict:
    p = p.filled(n)
    return {
        "C01": quat_to_json(p.C01), "C02": quat_to_json(p.C02),
        "A01": qmatrix_to_json(p.A01), "A02": qmatrix_to_json(p.A02), "A03": qmatrix_to_json(p.A03),
        "S01": qvector_to_json(p.S01), "S02": qvector_to_json(p.S02),
        "Rprime": p.Rprime.to_json(),
        "P0": [{"x": x, "matrix": matrix_to_json(p.P0.value(x))}
               for x in range(4 * n) if not p.P0.is_zero() and p.P0.value(x).any()],
        "d": [scalar_to_json(v) for v in p.d],
    }


def prop1_params_from_json(d: dict, n: int) -> Prop1Params:
    if not isinstance(d, dict):
        raise SpecParseError("curvature parameters are a JSON object")
    opt = lambda key, fn: fn(d[key]) if key in d else None
    P0 = None
    if d.get("P0"):
        P0 = PTensor(4 * n, {int(e["x"]): matrix_from_json(e["matrix"]) for e in d["P0"]})
    Rp = CurvatureTensor.from_json(4 * n, d["Rprime"]) if d.get("Rprime") else None
    dd = tuple(scalar_from_json(v) for v in d.get("d", [0] * 5))
    if len(dd) != 5:
        raise SpecParseError("'d' has exactly five entries")
    return Prop1Params(
        C01=quat_from_json(d.get("C01", "0")), C02=quat_from_json(d.get("C02", "0")),
        A01=opt("A01", qmatrix_from_json), A02=opt("A02", qmatrix_from_json),
        A03=opt("A03", qmatrix_from_json),
        S01=opt("S01", qvector_from_json), S02=opt("S02", qvector_from_json),
        Rprime=Rp, P0=P0, d=dd,
    )


def subalgebra_to_json(g) -> List[List[List[str]]]:
    """The realified basis matrices, row-major exact rationals."""
    return [matrix_to_json(M) for M in g.matrices()]


# ---------------------------------------------------------------------------
# text I/O

def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def _get(d: dict, key: str, typ):
    if not isinstance(d, dict) or key not in d:
        raise SpecParseError(f"missing field {key!r}")
    v = d[key]
    if typ is int and isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    if not isinstance(v, typ) or isinstance(v, bool):
        raise SpecParseError(f"field {key!r} should be {typ.__name__}, got {v!r}")
    return v
