"""Centralizers of Richardson elements inside the nilradical, and their centers.

Elements of u are handled in coordinates indexed by ``nilradical_positions(d)``.
Centralizers are computed as kernels over F_p; for one or two Levi roots the
closed-form bases are available too, and ``verify_table1`` compares both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CaseVacuous, Unsupported
from .exact import PrimeField, Subspace, kernel_basis, next_prime
from .report import Check, TableReport
from .typea import (PATTERN_LABELS, PATTERNS, DimensionVector, NilElement, levi_pattern,
                    levi_roots, line_diagram, nilradical_positions, pattern_instances,
                    richardson)


def _modulus(p) -> int:
    return int(p.p if isinstance(p, PrimeField) else p)


def default_prime(d: DimensionVector) -> int:
    """Smallest prime above n, where all computations here are characteristic-free."""
    return next_prime(d.n + 1)


def ad_matrix(elements: Sequence[NilElement], positions, p) -> np.ndarray:
    """Matrix of y ↦ ([b_1, y], ..., [b_k, y]) from u-coordinates to stacked gl entries."""
    q = _modulus(p)
    blocks = []
    for b in elements:
        bm = b.matrix()
        size = bm.shape[0]
        m = np.zeros((size, size, len(positions)), dtype=np.int64)
        for k, (i, j) in enumerate(positions):
            m[:, j - 1, k] += bm[:, i - 1]   # b e_ij
            m[i - 1, :, k] -= bm[j - 1, :]   # e_ij b
        blocks.append(m.reshape(size * size, len(positions)))
    if not blocks:
        return np.zeros((0, len(positions)), dtype=np.int64)
    a = np.vstack(blocks) % q
    return a[a.any(axis=1)]


def common_centralizer(elements: Sequence[NilElement], d: DimensionVector, p) -> Subspace:
    """{y ∈ u : [b, y] = 0 for every b in ``elements``}."""
    positions = nilradical_positions(d)
    a = ad_matrix(elements, positions, p)
    if a.shape[0] == 0:
        return Subspace.full(_modulus(p), len(positions))
    return kernel_basis(a, p)


def to_elements(space: Subspace, d: DimensionVector) -> list[NilElement]:
    positions = nilradical_positions(d)
    return [NilElement.from_coords(v, positions, d.size, space.p) for v in space.matrix]


def span_of(elements: Sequence[NilElement], d: DimensionVector, p) -> Subspace:
    positions = nilradical_positions(d)
    q = _modulus(p)
    return Subspace.span([e.coords(positions) for e in elements], q, len(positions))


def _pairwise_commute(elements: Sequence[NilElement]) -> bool:
    mats = [e.matrix() for e in elements]
    if not mats:
        return True
    q = elements[0].p
    return all(not ((a @ b - b @ a) % q).any()
               for k, a in enumerate(mats) for b in mats[k + 1:])


@dataclass(frozen=True)
class CentralizerBasis:
    d: DimensionVector
    p: int
    basis: Subspace
    abelian: bool
    generators: tuple[NilElement, ...] = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def elements(self) -> list[NilElement]:
        return to_elements(self.basis, self.d)


@dataclass(frozen=True)
class CenterBasis:
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim


def _make(d, q, space, generators=()) -> CentralizerBasis:
    return CentralizerBasis(d, q, space, _pairwise_commute(to_elements(space, d)), tuple(generators))


def centralizer_in_u(d: DimensionVector, p) -> CentralizerBasis:
    """c_u(x(d)) as the kernel of y ↦ [x(d), y] on u."""
    q = _modulus(p)
    return _make(d, q, common_centralizer([richardson(d, q)], d, q))


def center_of(c: CentralizerBasis, p=None) -> CenterBasis:
    """Z(c): elements of c commuting with every basis vector of c."""
    q = _modulus(p) if p is not None else c.p
    elems = to_elements(c.basis, c.d)
    k = len(elems)
    if k == 0:
        return CenterBasis(c.basis)
    mats = [e.matrix() for e in elems]
    cols = []
    for i in range(k):
        cols.append(np.concatenate([(mats[j] @ mats[i] - mats[i] @ mats[j]).ravel()
                                    for j in range(k)]))
    a = np.array(cols, dtype=np.int64).T % q
    a = a[a.any(axis=1)]
    if a.shape[0] == 0:
        return CenterBasis(c.basis)
    t = kernel_basis(a, q)
    z = (t.matrix @ c.basis.matrix) % q
    return CenterBasis(Subspace.span(z, q, c.basis.ambient))


def is_abelian(c: CentralizerBasis, p=None) -> bool:
    return _pairwise_commute(to_elements(c.basis, c.d))


# -- closed forms for one or two Levi roots -------------------------------------------

def _pattern_params(d: DimensionVector) -> tuple[str, int, int, int]:
    roots = sorted(levi_roots(d).indices)
    if len(roots) not in (1, 2):
        raise Unsupported(f"closed forms exist only for 1 or 2 Levi roots, d={d} has {len(roots)}")
    try:
        key = levi_pattern(d.n, roots)
    except ValueError:
        raise CaseVacuous(f"rank n={d.n} is too small for the side conditions of d={d}") from None
    r = roots[0]
    s = roots[-1]
    return key, d.n, r, s


def powers(x: NilElement, top: int) -> list[NilElement]:
    return [x ** k for k in range(1, top + 1)]


def closed_form_generators(d: DimensionVector, p=None) -> list[NilElement]:
    """The explicit generators of c_u(x(d)) for the ten one/two-root cases."""
    key, n, r, s = _pattern_params(d)
    q = _modulus(p) if p is not None else default_prime(d)
    x = richardson(d, q)

    def e(*terms):
        out = NilElement(d.size, q)
        for i, j in terms:
            out = out + NilElement.elementary(d.size, q, i, j)
        return out

    one_root = {
        "a1": lambda: [e((2, n + 1))],
        "as": lambda: [e((1, s + 1)), e((s + 1, n + 1))],
        "an": lambda: [e((1, n + 1))],
    }
    two_roots = {
        "a1,a2": lambda: [e((2, n + 1)), e((3, n + 1))],
        "ar,ar+1": lambda: [e((1, r + 1)), e((1, r + 2)), e((r + 1, n + 1)), e((r + 2, n + 1))],
        "an-1,an": lambda: [e((1, n)), e((1, n + 1))],
        "a1,an": lambda: [e((1, n + 1)), e((2, n))],
        "a1,as": lambda: [e((1, s + 1)), e((2, n + 1)), e((2, n), (s + 1, n + 1))],
        "ar,an": lambda: [e((1, n + 1)), e((r + 1, n)), e((1, r + 1), (2, n + 1))],
        "ar,as": lambda: [e((1, s + 1)), e((r + 1, n + 1)), e((1, r + 1), (2, s + 1)),
                          e((r + 1, n), (s + 1, n + 1))],
    }
    if key in one_root:
        gens = one_root[key]() + powers(x, n - 1)
    else:
        gens = two_roots[key]() + powers(x, n - 2)
    for g in gens:
        if not g.in_nilradical(d):
            raise CaseVacuous(f"generator {g} falls outside u for d={d}")
    return gens


def closed_form_basis(d: DimensionVector, p=None) -> CentralizerBasis:
    q = _modulus(p) if p is not None else default_prime(d)
    gens = closed_form_generators(d, q)
    return _make(d, q, span_of(gens, d, q), gens)


CENTER_RULE = {
    "a1": "all", "an": "all", "a1,a2": "all", "a1,an": "all", "an-1,an": "all",
    "as": "powers", "ar,ar+1": "powers", "ar,as": "powers",
    "a1,as": "e2n+1", "ar,an": "e1n+1",
}


def closed_form_center(d: DimensionVector, p=None) -> list[NilElement]:
    """Generators of Z(c_u(x(d))) in the four center cases."""
    key, n, _, _ = _pattern_params(d)
    q = _modulus(p) if p is not None else default_prime(d)
    rule = CENTER_RULE[key]
    if rule == "all":
        return closed_form_generators(d, q)
    x = richardson(d, q)
    top = n - 1 if "," not in key else n - 2
    extra = {"powers": [],
             "e2n+1": [NilElement.elementary(d.size, q, 2, n + 1)],
             "e1n+1": [NilElement.elementary(d.size, q, 1, n + 1)]}[rule]
    return extra + powers(x, top)


# Table rows: abelian?, dim − n
TABLE1 = {
    "a1": (True, 0), "as": (False, 1), "an": (True, 0),
    "a1,a2": (True, 0), "an-1,an": (True, 0), "ar,ar+1": (False, 2),
    "a1,an": (True, 0), "ar,an": (False, 1), "a1,as": (False, 1), "ar,as": (False, 2),
}


# -- coefficient propagation ----------------------------------------------------------

@dataclass
class PropagationReport:
    passed: bool
    violations: list[str] = field(default_factory=list)


def check_propagation(x: NilElement, d: DimensionVector) -> PropagationReport:
    """Necessary condition for [x(d), x] = 0 on entries joining different lines.

    For each support entry k_{a,b} with l(a) != l(b): if a has a predecessor
    a^- on its line then b^- exists and k_{a^-,b^-} = k_{a,b}; if b has a
    successor b^+ then a^+ exists and k_{a^+,b^+} = k_{a,b}.
    """
    diag = line_diagram(d)
    line, succ, pred = diag.line_of, diag.successor, diag.predecessor
    k = x.support
    bad = []
    for (a, b), c in sorted(k.items()):
        if line[a] == line[b]:
            continue
        if a in pred:
            if b not in pred:
                bad.append(f"({a},{b}): {a}^- = {pred[a]} exists but {b}^- does not")
            elif k.get((pred[a], pred[b]), 0) != c:
                bad.append(f"({a},{b}): k[{pred[a]},{pred[b]}] = {k.get((pred[a], pred[b]), 0)} != {c}")
        if b in succ:
            if a not in succ:
                bad.append(f"({a},{b}): {b}^+ = {succ[b]} exists but {a}^+ does not")
            elif k.get((succ[a], succ[b]), 0) != c:
                bad.append(f"({a},{b}): k[{succ[a]},{succ[b]}] = {k.get((succ[a], succ[b]), 0)} != {c}")
    return PropagationReport(not bad, bad)


# -- table sweep ----------------------------------------------------------------------

def verify_table1(n: int, p) -> TableReport:
    """Kernel dimension, abelianness and closed-form span for every root placement."""
    q = _modulus(p)
    rep = TableReport(f"table1 n={n} p={q}")
    for key in PATTERNS:
        abelian, offset = TABLE1[key]
        instances = pattern_instances(n, key)
        if not instances:
            rep.add(Check.skipped(f"table1/{key}", f"no instance of {PATTERN_LABELS[key]} at n={n}"))
            continue
        for roots in instances:
            d = DimensionVector.from_levi(n, roots)
            tag = f"table1/{key}/d={d}"
            c = centralizer_in_u(d, q)
            rep.add(Check.compare(f"{tag}/dim", n + offset, c.dim))
            rep.add(Check.compare(f"{tag}/abelian", abelian, c.abelian))
            cf = closed_form_basis(d, q)
            rep.add(Check.compare(f"{tag}/closed_form", True, cf.basis == c.basis))
    return rep


def verify_centers(n: int, p) -> TableReport:
    q = _modulus(p)
    rep = TableReport(f"centers n={n} p={q}")
    for key in PATTERNS:
        for roots in pattern_instances(n, key):
            d = DimensionVector.from_levi(n, roots)
            c = centralizer_in_u(d, q)
            z = center_of(c, q)
            expected = span_of(closed_form_center(d, q), d, q)
            tag = f"center/{key}/d={d}"
            rep.add(Check.compare(f"{tag}/dim", expected.dim, z.dim))
            rep.add(Check.compare(f"{tag}/basis", True, z.basis == expected))
    return rep
