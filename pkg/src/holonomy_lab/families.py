"""The nine families of Berger subalgebras of ``sp(1,n+1)_{Hp}`` and two
algebras that fail the Berger test.

A :class:`FamilySpec` is declarative: the family name, the block sizes,
generators of ``h`` and the values of the maps ``phi: h -> sp(1)``,
``varphi: h -> R`` and ``psi: h -> U`` on those generators.  :func:`family_g`
validates the side conditions and returns a bracket-closed
:class:`~holonomy_lab.parabolic.Subalgebra`.

Sign convention: ``sp(1)`` is identified with ``{(a,0,0,0) | a in Im H}``
through ``(a,0,0,0) -> -a``, so an ``sp(1)``-valued datum ``c`` is placed in
the ``a``-slot as ``-c``.  Real data are placed as they are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .hermitian import (HermitianSpace, RealSubspace, SpaceError, build_B, build_L,
                        complex_block, imaginary_block, make_space, quaternionic_block)
from .parabolic import AlgebraError, ParabolicElement, Subalgebra, element, sp_basis, sp_condition
from .quat import I, J, K, ONE, ZERO, QMatrix, QVector, Quat, block_diag

FAMILIES = tuple(f"g{i}" for i in range(1, 10))
H0_CHOICES = ("0", "Ri", "sp1")


class FamilyError(ValueError):
    """A side condition of a family is violated; ``clause`` names it."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        self.detail = detail
        super().__init__(f"{clause}" + (f" ({detail})" if detail else ""))


@dataclass
class LprimeBlock:
    """One ``B(l)`` block of ``L'``: generators ``f_t = e_{offset+t}``."""

    l: int
    offset: int
    swapped: bool = False

    def build(self, n: int) -> RealSubspace:
        return build_B(self.l, n=n, offset=self.offset, swapped=self.swapped)


@dataclass
class FamilySpec:
    """Parameters of one of ``g1 .. g9``.

    ``h_generators`` are ``r x r`` quaternionic matrices in ``sp(r)`` with
    ``r = m`` (``r = k`` for ``g9``), embedded in the top-left block.  The
    map values are listed per generator.  ``U`` (for ``g9``) is given by a
    spanning list of vectors of ``H^n``.
    """

    family: str
    n: int
    m: int = 0
    m1: int = 0
    m2: int = 0
    k: int = 0
    h_generators: List[QMatrix] = field(default_factory=list)
    h0: str = "0"
    phi_values: List[Quat] = field(default_factory=list)
    varphi_values: List[Fraction] = field(default_factory=list)
    psi_values: List[QVector] = field(default_factory=list)
    alpha: Fraction = Fraction(0)
    Lprime: List[LprimeBlock] = field(default_factory=list)
    U: List[QVector] = field(default_factory=list)
    G: Optional[QMatrix] = None
    label: str = ""

    def space(self) -> HermitianSpace:
        return make_space(self.n, self.G)


@dataclass
class Compliance:
    """Outcome of the side-condition checks that do not block construction."""

    notes: List[Tuple[str, bool]] = field(default_factory=list)

    def record(self, clause: str, ok: bool) -> None:
        self.notes.append((clause, ok))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.notes)

    def failures(self) -> List[str]:
        return [c for c, ok in self.notes if not ok]


# ---------------------------------------------------------------------------
# helpers on h

def _embed(A: QMatrix, n: int, offset: int = 0) -> QMatrix:
    r = A.rows
    blocks = []
    if offset:
        blocks.append(QMatrix.zeros(offset))
    blocks.append(A)
    if n - offset - r:
        blocks.append(QMatrix.zeros(n - offset - r))
    return block_diag(*blocks)


def _commutator(A: QMatrix, B: QMatrix) -> QMatrix:
    return A.compose(B) - B.compose(A)


def _coords_in(vec: Sequence, basis: Sequence[Sequence]) -> Optional[List[Fraction]]:
    return linalg.coordinates(list(vec), [list(b) for b in basis])


class _HData:
    """Generators of ``h`` with their bracket structure constants."""

    def __init__(self, gens: Sequence[QMatrix], r: int, family: str):
        self.gens = list(gens)
        G = QMatrix.identity(r) if r else None
        for a, A in enumerate(self.gens):
            if A.rows != r or A.cols != r:
                raise FamilyError(f"{family}: h must be a subalgebra of sp({r})",
                                  f"generator {a} has shape {A.rows}x{A.cols}")
            if sp_condition(A, G):
                raise FamilyError(f"{family}: h must be a subalgebra of sp({r})",
                                  f"generator {a} is not in sp({r})")
        vecs = [A.to_real() for A in self.gens]
        if self.gens and linalg.rank(vecs) != len(self.gens):
            raise FamilyError(f"{family}: h generators must be R-independent")
        self.brackets: Dict[Tuple[int, int], List[Fraction]] = {}
        for a in range(len(self.gens)):
            for b in range(a + 1, len(self.gens)):
                c = _coords_in(_commutator(self.gens[a], self.gens[b]).to_real(), vecs)
                if c is None:
                    raise FamilyError(f"{family}: h must be a subalgebra of sp({r})",
                                      f"[h{a}, h{b}] leaves the span")
                self.brackets[(a, b)] = c

    def derived_vectors(self) -> List[List[Fraction]]:
        """Coordinates (in the generator basis) spanning ``h' = [h, h]``."""
        return [c for c in self.brackets.values() if any(c)]

    def evaluate(self, values: Sequence, coords: Sequence[Fraction]):
        acc = None
        for c, v in zip(coords, values):
            if c:
                term = v * Fraction(c) if not isinstance(v, QVector) else v.scale(Quat(Fraction(c)))
                acc = term if acc is None else acc + term
        return acc


def _quat_zero(x) -> bool:
    return x is None or not x


def _check_counts(spec: FamilySpec, name: str, values: Sequence) -> None:
    if len(values) != len(spec.h_generators):
        raise FamilyError(f"{spec.family}: {name} needs one value per generator of h",
                          f"{len(values)} values for {len(spec.h_generators)} generators")


def _check_phi(spec: FamilySpec, h: _HData) -> List[Quat]:
    vals = [Quat.coerce(v) for v in spec.phi_values]
    _check_counts(spec, "phi", vals)
    for v in vals:
        if not v.is_imaginary():
            raise FamilyError(f"{spec.family}: phi takes values in sp(1) = Im H")
    for (a, b), c in h.brackets.items():
        lhs = h.evaluate(vals, c)
        rhs = vals[a] * vals[b] - vals[b] * vals[a]
        if (lhs or ZERO) != rhs:
            raise FamilyError(f"{spec.family}: phi must be a Lie algebra homomorphism",
                              f"fails on generators {a}, {b}")
    return vals


def _check_varphi(spec: FamilySpec, h: _HData) -> List[Fraction]:
    vals = [Fraction(v) for v in spec.varphi_values]
    _check_counts(spec, "varphi", vals)
    for c in h.derived_vectors():
        if h.evaluate(vals, c):
            raise FamilyError(f"{spec.family}: varphi must vanish on h' = [h, h]")
    return vals


def _vanishes_on_derived(h: _HData, vals) -> bool:
    return all(_quat_zero(h.evaluate(vals, c)) for c in h.derived_vectors())


def _image_dim(vals: Sequence[Quat]) -> int:
    vecs = [list(v.coeffs) for v in vals if v]
    return linalg.rank(vecs) if vecs else 0


def _image_is_Ri(vals: Sequence[Quat]) -> bool:
    return any(vals) and all(v.c0 == 0 and v.c2 == 0 and v.c3 == 0 for v in vals)


# ---------------------------------------------------------------------------
# translation parts

def _Lprime(spec: FamilySpec) -> RealSubspace:
    n = spec.n
    start = spec.m + spec.m1 + spec.m2
    out = RealSubspace.zero(n)
    covered = []
    for blk in spec.Lprime:
        if blk.l < 2:
            raise FamilyError(f"{spec.family}: L' is a g-orthogonal sum of blocks B(l) with l >= 2",
                              f"got l = {blk.l}")
        covered += list(range(blk.offset, blk.offset + blk.l))
        try:
            out = out + blk.build(n)
        except SpaceError as exc:
            raise FamilyError(f"{spec.family}: L' blocks must fit in H^n", str(exc)) from None
    if covered and sorted(covered) != list(range(start, n)):
        raise FamilyError(f"{spec.family}: L' blocks must partition the indices after m + m1 + m2",
                          f"covered {sorted(covered)}, expected {list(range(start, n))}")
    return out


def _build_L(spec: FamilySpec, space: HermitianSpace) -> RealSubspace:
    m, m1, m2, n = spec.m, spec.m1, spec.m2, spec.n
    if m + m1 + m2 > n:
        raise FamilyError(f"{spec.family}: m + m1 + m2 <= n")
    Lp = _Lprime(spec)
    if not spec.Lprime and m + m1 + m2 != n:
        raise FamilyError(f"{spec.family}: either m + m1 + m2 = n or m + m1 + m2 <= n - 2")
    try:
        return build_L(m, m1, m2, Lp, space=space)
    except SpaceError as exc:
        raise FamilyError(f"{spec.family}: the decomposition of L must be g-orthogonal", str(exc)) from None


def _U(spec: FamilySpec) -> RealSubspace:
    return RealSubspace.span(spec.n, list(spec.U)) if spec.U else RealSubspace.zero(spec.n)


def _eta_complement(space: HermitianSpace, L: RealSubspace, W: RealSubspace) -> RealSubspace:
    """``{X in L | eta(X, W) = 0}``."""
    if not W.basis:
        return L
    rows = [[space.g(X, Y).re() for X in L.basis] for Y in W.basis]
    ker = linalg.nullspace(rows, L.dim)
    vecs = []
    for kvec in ker:
        acc = QVector.zeros(L.ambient_n)
        for c, X in zip(kvec, L.basis):
            if c:
                acc = acc + X.scale(Quat(c))
        vecs.append(acc)
    return RealSubspace.span(L.ambient_n, vecs)


# ---------------------------------------------------------------------------
# validation + construction

def _check_sizes(spec: FamilySpec) -> None:
    f, n, m = spec.family, spec.n, spec.m
    if f not in FAMILIES:
        raise FamilyError(f"unknown family {f!r}", f"expected one of {', '.join(FAMILIES)}")
    if n < 1:
        raise FamilyError(f"{f}: n >= 1")
    if not 0 <= m <= n:
        raise FamilyError(f"{f}: 0 <= m <= n")
    if spec.h0 not in H0_CHOICES:
        raise FamilyError(f"{f}: h0 is one of 0, Ri, sp1", repr(spec.h0))
    if f == "g2" and m < 1:
        raise FamilyError("g2: 1 <= m <= n")
    if f in ("g7", "g8") and n - m < 1:
        raise FamilyError(f"{f}: n - m >= 1")
    if f != "g9" and spec.k:
        raise FamilyError(f"{f}: k is only used by g9")
    unused = {
        "phi_values": f not in ("g2", "g4", "g8"),
        "varphi_values": f not in ("g3", "g4", "g5"),
        "psi_values": f != "g9",
    }
    for name, bad in unused.items():
        if bad and getattr(spec, name):
            raise FamilyError(f"{f}: {name} is not a parameter of this family")
    if f not in ("g1", "g3") and spec.h0 != "0":
        raise FamilyError(f"{f}: h0 is not a parameter of this family")
    if f not in ("g6", "g9") and (spec.m1 or spec.m2 or spec.Lprime):
        raise FamilyError(f"{f}: m1, m2 and L' are parameters of g6 and g9 only")


def _h0_elements(space: HermitianSpace, h0: str) -> List[ParabolicElement]:
    units = {"0": (), "Ri": (I,), "sp1": (I, J, K)}[h0]
    return [element(space, a=-u) for u in units]


def family_g(spec: FamilySpec, space: Optional[HermitianSpace] = None,
             check_closure: bool = True) -> Subalgebra:
    """Exact basis of the family member described by ``spec``.

    Raises :class:`FamilyError` naming the violated side condition.  Conditions
    that only separate sub-cases (non-vanishing or non-proportional maps)
    are recorded in ``result.compliance`` instead of raising.
    """
    _check_sizes(spec)
    f, n, m = spec.family, spec.n, spec.m
    if space is None:
        space = spec.space()
    elif space.n != n:
        raise FamilyError(f"{f}: the space has n = {space.n}, the spec n = {n}")
    r = spec.k if f == "g9" else m
    h = _HData(spec.h_generators, r, f)
    hg = [_embed(A, n) for A in h.gens]
    comp = Compliance()
    gens: List[ParabolicElement] = []
    E = lambda c: _embed(QMatrix.scalar(n - m, c), n, m)  # Op(c E_{n-m}) on the last block

    if f == "g1":
        if m < n and spec.h0 != "Ri":
            raise FamilyError("g1: if m < n then h0 = Ri")
        if spec.h0 == "0":
            raise FamilyError("g1: h0 = Ri or h0 = sp1")
        gens += [element(space, a=ONE)] + _h0_elements(space, spec.h0)
        gens += [element(space, A=A) for A in hg]
    elif f == "g2":
        phi = _check_phi(spec, h)
        comp.record("g2: phi is non-zero", any(phi))
        ri = _image_is_Ri(phi) and _vanishes_on_derived(h, phi)
        if m < n:
            comp.record("g2: if m < n then Im phi = Ri and phi vanishes on h'", ri)
        else:
            comp.record("g2: if m = n then Im phi = Ri with phi|h' = 0, or Im phi = sp1",
                        ri or _image_dim(phi) == 3)
        gens += [element(space, a=ONE)]
        gens += [element(space, a=-p, A=A) for p, A in zip(phi, hg)]
    elif f == "g3":
        vphi = _check_varphi(spec, h)
        if spec.h0 == "0":
            raise FamilyError("g3: h0 = Ri or h0 = sp1")
        if m < n:
            if spec.h0 != "Ri":
                raise FamilyError("g3: if m < n then h0 = Ri")
            comp.record("g3: if m < n then varphi is non-zero", any(vphi))
        else:
            comp.record("g3: if m = n then h0 = Ri with varphi non-zero, or h0 = sp1",
                        spec.h0 == "sp1" or any(vphi))
        gens += _h0_elements(space, spec.h0)
        gens += [element(space, a=Quat(v), A=A) for v, A in zip(vphi, hg)]
    elif f == "g4":
        phi = _check_phi(spec, h)
        vphi = [Fraction(v) for v in spec.varphi_values]
        _check_counts(spec, "varphi", vphi)
        for c in h.derived_vectors():
            if h.evaluate(vphi, c):
                raise FamilyError("g4: varphi must be a homomorphism to R (vanish on h')")
        if m < n:
            trivial = not any(phi) and not any(vphi)
            ok = trivial or (any(vphi) and _image_is_Ri(phi) and _vanishes_on_derived(h, phi)
                             and linalg.rank([[v for v in vphi], [p.c1 for p in phi]]) == 2)
            comp.record("g4: if m < n then varphi = phi = 0, or varphi != 0, Im phi = Ri, "
                        "i varphi and phi not proportional, both vanish on h'", ok)
        gens += [element(space, a=Quat(v) - p, A=A) for v, p, A in zip(vphi, phi, hg)]
    elif f == "g5":
        vphi = _check_varphi(spec, h)
        alpha = Fraction(spec.alpha)
        if alpha == 0:
            raise FamilyError("g5: alpha != 0")
        comp.record("g5: varphi is non-zero", any(vphi))
        gens += [element(space, a=Quat(alpha) - I)]
        gens += [element(space, a=Quat(v), A=A) for v, A in zip(vphi, hg)]
    elif f == "g6":
        gens += [element(space, A=A) for A in hg]
    elif f == "g7":
        gens += [element(space, a=u, A=E(u)) for u in (I, J, K)]
        gens += [element(space, A=A) for A in hg]
    elif f == "g8":
        phi = _check_phi(spec, h)
        if _image_dim(phi) != 3:
            raise FamilyError("g8: phi must be surjective onto sp1")
        gens += [element(space, a=-p, A=A + E(-p)) for p, A in zip(phi, hg)]
    elif f == "g9":
        L = _build_L(spec, space)
        Hk = quaternionic_block(n, 0, spec.k)
        U = _U(spec)
        if spec.k > n:
            raise FamilyError("g9: k <= n")
        if not (Hk + U) <= L or not Hk <= L:
            raise FamilyError("g9: H^k and U must lie in L")
        if not all(space.g(X, Y).re() == 0 for X in Hk.basis for Y in U.basis):
            raise FamilyError("g9: L = H^k + V + U is an eta-orthogonal decomposition")
        if Hk.intersect(U).dim:
            raise FamilyError("g9: L = H^k + V + U is a direct sum")
        psi = [QVector(tuple(v)) if not isinstance(v, QVector) else v for v in spec.psi_values]
        _check_counts(spec, "psi", psi)
        if any(not U.contains(v) for v in psi):
            raise FamilyError("g9: psi takes values in U")
        if RealSubspace.span(n, psi) != U:
            raise FamilyError("g9: psi must be surjective onto U")
        for c in h.derived_vectors():
            if h.evaluate(psi, c):
                raise FamilyError("g9: psi must vanish on h'")
        gens += [element(space, A=A, X=v) for A, v in zip(hg, psi)]

    T = translation_part(spec, space)
    gens += [element(space, X=X) for X in T.basis]
    gens += [element(space, b=u) for u in (I, J, K)]
    try:
        g = Subalgebra.spanned_by(space, gens, metadata=spec, check_closure=check_closure,
                                  name=spec.label or f)
    except AlgebraError as exc:
        raise FamilyError(f"{f}: the data do not define a subalgebra", str(exc)) from None
    g.compliance = comp
    return g


def translation_part(spec: FamilySpec, space: HermitianSpace) -> RealSubspace:
    n, m, f = spec.n, spec.m, spec.family
    if f in ("g1", "g2", "g3", "g4", "g5"):
        return quaternionic_block(n, 0, m) + complex_block(n, m, n - m)
    if f == "g6":
        return _build_L(spec, space)
    if f in ("g7", "g8"):
        return quaternionic_block(n, 0, m) + imaginary_block(n, m, n - m)
    L = _build_L(spec, space)
    Hk = quaternionic_block(n, 0, spec.k)
    V = _eta_complement(space, L, Hk + _U(spec))
    return Hk + V


# ---------------------------------------------------------------------------
# the documented minimal instantiations

def _op(c, r: int = 1) -> QMatrix:
    return QMatrix.scalar(r, c)


def minimal_specs() -> Dict[str, FamilySpec]:
    """One small instantiation per family (all Berger)."""
    sp1 = [_op(I), _op(J), _op(K)]
    return {
        "g1": FamilySpec("g1", n=1, m=1, h0="Ri", label="g1: m=n=1, h0=Ri, h=0"),
        "g2": FamilySpec("g2", n=1, m=1, h_generators=[_op(I)], phi_values=[I],
                         label="g2: m=n=1, h=R Op(i), phi(Op(i)) = i"),
        "g3": FamilySpec("g3", n=1, m=1, h0="sp1", label="g3: m=n=1, h0=sp1, h=0"),
        "g4": FamilySpec("g4", n=1, m=1, h_generators=sp1, phi_values=[ZERO] * 3,
                         varphi_values=[0] * 3, label="g4: m=n=1, h=sp(1), phi=varphi=0"),
        "g5": FamilySpec("g5", n=1, m=1, h_generators=[_op(I)], varphi_values=[1], alpha=Fraction(1),
                         label="g5: m=n=1, alpha=1, h=R Op(i), varphi(Op(i)) = 1"),
        "g6": FamilySpec("g6", n=2, m=0, Lprime=[LprimeBlock(2, 0)], label="g6: n=2, m=0, L'=B(2)"),
        "g7": FamilySpec("g7", n=2, m=0, label="g7: n=2, m=0, h=0"),
        "g8": FamilySpec("g8", n=2, m=1, h_generators=sp1, phi_values=[-I, -J, -K],
                         label="g8: n=2, m=1, h=sp(1), phi(Op(a)) = -a"),
        "g9": FamilySpec("g9", n=2, m=1, m2=1, k=1, h_generators=[_op(I)],
                         psi_values=[QVector((ZERO, I))], U=[QVector((ZERO, I))],
                         label="g9: n=2, L = H e1 + C e2, k=1, h=R Op(i), U=R ie2, V=R e2"),
    }


def minimal_family(name: str) -> Subalgebra:
    return family_g(minimal_specs()[name])


# ---------------------------------------------------------------------------
# algebras that are not Berger

def lemma1_algebra(space: HermitianSpace) -> Subalgebra:
    """``R(1,0,0,0) + (H^n + Im H)``: the H-projection is one-dimensional."""
    n = space.n
    gens = [element(space, a=ONE)]
    gens += [element(space, X=X) for X in quaternionic_block(n, 0, n).basis]
    gens += [element(space, b=u) for u in (I, J, K)]
    return Subalgebra(space, gens, name="lemma1")


def complex_line_algebra(space: HermitianSpace, alpha=1, beta=0) -> Subalgebra:
    """``R(1,0,0,alpha j + beta k) + R(i,0,0,-beta j + alpha k) + C^n + R(0,0,0,i)``.

    The second generator is an ``sp(1)`` datum, so its tuple ``a``-slot is
    ``-i``; with ``+i`` the span is not closed.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0 and beta == 0:
        raise FamilyError("alpha and beta are not both zero")
    n = space.n
    gens = [element(space, a=ONE, b=J * alpha + K * beta),
            element(space, a=-I, b=J * (-beta) + K * alpha)]
    gens += [element(space, X=X) for X in complex_block(n, 0, n).basis]
    gens.append(element(space, b=I))
    return Subalgebra(space, gens, name="complex-line")


COUNTEREXAMPLES = {"lemma1": lemma1_algebra, "complex-line": complex_line_algebra}
