"""Elementary subalgebras of u containing a nilpotent element, and saturation rank.

When every element of u is p-nilpotent (λ_1 ≤ p), elementary means abelian.
A maximal one containing x lies in c = c_u(x) and contains its center z, so
the search runs in the quotient Q = c/z with the induced bracket.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .cent import (_modulus, center_of, centralizer_in_u, common_centralizer, powers, span_of,
                   to_elements)
from .errors import CapExceeded, PreconditionViolated, Unsupported, WrongArity
from .exact import (Subspace, batch_rref, grassmannian, projective_points,
                    rref_with_pivots)
from .jordan import partition_of
from .report import Check, TableReport
from .typea import (PATTERN_LABELS, PATTERNS, DimensionVector, NilElement, levi_pattern,
                    levi_roots, nilradical_positions, pattern_instances, richardson)

DEFAULT_CAP = 5


def p_nilpotency_class(x: NilElement) -> int:
    """Smallest m with x^m = 0 (1 for the zero element)."""
    m, y = 1, x
    while y.support:
        y = y @ x
        m += 1
        if m > x.size + 1:
            raise ArithmeticError("element is not nilpotent")
    return m


def nullcone_equals_u(d: DimensionVector, p) -> bool:
    """V(u) = u iff the Richardson class (dense in u) is killed by the p-th power."""
    return partition_of(d).largest <= _modulus(p)


def is_restricted_parabolic(d: DimensionVector, p) -> bool:
    return nullcone_equals_u(d, p)


def _require_restricted(d: DimensionVector, p):
    if not nullcone_equals_u(d, p):
        raise PreconditionViolated(
            f"V(u) != u for d={d}, p={_modulus(p)}: x(d) has nilpotency class "
            f"{partition_of(d).largest} > p")


# -- data types ------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementarySubalgebra:
    d: DimensionVector
    p: int
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim

    def elements(self) -> list[NilElement]:
        return to_elements(self.basis, self.d)

    def is_abelian(self) -> bool:
        mats = [e.matrix() for e in self.elements()]
        return all(not ((a @ b - b @ a) % self.p).any()
                   for k, a in enumerate(mats) for b in mats[k + 1:])

    def in_nullcone(self) -> bool:
        """Every element has zero p-th power.

        For commuting elements (a + b)^p = a^p + b^p in characteristic p, so
        for an abelian span the basis suffices.
        """
        if not self.is_abelian():
            return False
        return all(not (b ** self.p).support for b in self.elements())

    def contains(self, y: NilElement) -> bool:
        return tuple(y.coords(nilradical_positions(self.d))) in self.basis

    def key(self) -> tuple:
        return self.basis.rows


def _point(a: int, b: int, q: int) -> tuple[int, int]:
    a, b = a % q, b % q
    if a == 0 and b == 0:
        raise ValueError("(0:0) is not a projective point")
    lead = a if a else b
    inv = pow(lead, -1, q)
    return (a * inv % q, b * inv % q)


@dataclass(frozen=True)
class FamilyPoint:
    """One or two points of P^1, plus which family of the union case (1 or 2)."""

    points: tuple[tuple[int, int], ...]
    branch: int | None = None

    def __post_init__(self):
        pts = tuple((int(a), int(b)) for a, b in self.points)
        if any(a == 0 and b == 0 for a, b in pts):
            raise ValueError("(0:0) is not a projective point")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *points: tuple[int, int], branch: int | None = None) -> "FamilyPoint":
        return cls(tuple(points), branch)

    def normalized(self, p) -> "FamilyPoint":
        q = _modulus(p)
        return FamilyPoint(tuple(_point(a, b, q) for a, b in self.points), self.branch)


def projective_line(p) -> list[tuple[int, int]]:
    q = _modulus(p)
    return [(1, b) for b in range(q)] + [(0, 1)]


# -- parametrized families -------------------------------------------------------------

FAMILY_CASE = {
    "a1": 0, "an": 0, "a1,a2": 0, "an-1,an": 0, "a1,an": 0,
    "as": 1, "ar,ar+1": 2, "ar,an": 3, "a1,as": 4, "ar,as": 5,
}
FAMILY_ARITY = {0: 0, 1: 1, 2: 2, 3: 1, 4: 1, 5: 1}


def _family_key(d: DimensionVector) -> tuple[str, int, int, int]:
    roots = sorted(levi_roots(d).indices)
    if not 1 <= len(roots) <= 2:
        raise Unsupported(f"families are described for 1 or 2 Levi roots, d={d} has {len(roots)}")
    key = levi_pattern(d.n, roots)
    return key, d.n, roots[0], roots[-1]


def theorem44_family(d: DimensionVector, pt: FamilyPoint, p) -> ElementarySubalgebra:
    """The member of the parametrized family attached to ``pt``.

    Abelian centralizers take no point and give the closed-form c_u(x(d)).
    The union case needs ``pt.branch`` in {1, 2}.
    """
    from .cent import closed_form_basis
    q = _modulus(p)
    key, n, r, s = _family_key(d)
    case = FAMILY_CASE[key]
    if len(pt.points) != FAMILY_ARITY[case]:
        raise WrongArity(f"{PATTERN_LABELS[key]} takes {FAMILY_ARITY[case]} point(s), "
                         f"got {len(pt.points)}")
    if case == 0:
        return ElementarySubalgebra(d, q, closed_form_basis(d, q).basis)
    if case == 5 and pt.branch not in (1, 2):
        raise WrongArity("the union case needs branch 1 or 2")
    pts = pt.normalized(q).points
    x = richardson(d, q)

    def e(i, j):
        return NilElement.elementary(d.size, q, i, j)

    if case == 1:
        (a, b), = pts
        gens = powers(x, n - 1) + [a * e(1, s + 1) + b * e(s + 1, n + 1)]
    elif case == 2:
        (a, b), (a2, b2) = pts
        gens = powers(x, n - 2) + [a * e(1, r + 1) + b * e(r + 1, n + 1),
                                   a2 * e(1, r + 2) + b2 * e(r + 2, n + 1)]
    elif case == 3:
        (a, b), = pts
        gens = powers(x, n - 2) + [a * (e(1, r + 1) + e(2, n + 1)) + b * e(r + 1, n), e(1, n + 1)]
    elif case == 4:
        (a, b), = pts
        gens = powers(x, n - 2) + [a * (e(2, n) + e(s + 1, n + 1)) + b * e(1, s + 1), e(2, n + 1)]
    elif pt.branch == 1:
        (a, b), = pts
        gens = powers(x, n - 2) + [a * (e(1, r + 1) + e(2, s + 1)) + b * e(r + 1, n + 1),
                                   e(1, s + 1)]
    else:
        (a, b), = pts
        gens = powers(x, n - 2) + [a * (e(r + 1, n) + e(s + 1, n + 1)) + b * e(1, s + 1),
                                   e(r + 1, n + 1)]
    return ElementarySubalgebra(d, q, span_of(gens, d, q))


def family_points(d: DimensionVector, p) -> list[FamilyPoint]:
    """Every F_p-point of the parameter variety of d's case."""
    key, *_ = _family_key(d)
    case = FAMILY_CASE[key]
    line = projective_line(p)
    if case == 0:
        return [FamilyPoint(())]
    if case == 2:
        return [FamilyPoint((u, v)) for u in line for v in line]
    if case == 5:
        return [FamilyPoint((u,), b) for b in (1, 2) for u in line]
    return [FamilyPoint((u,)) for u in line]


# -- maximality ------------------------------------------------------------------------

def common_centralizer_of(e: ElementarySubalgebra) -> Subspace:
    return common_centralizer(e.elements(), e.d, e.p)


def is_maximal_elementary(e: ElementarySubalgebra, d: DimensionVector, p) -> bool:
    """True iff {y ∈ u : [y, b] = 0 for all b in e} equals e."""
    _require_restricted(d, p)
    return common_centralizer_of(e) == e.basis


def extend_to_maximal(e: ElementarySubalgebra) -> ElementarySubalgebra:
    """Greedily add centralizer vectors until the fixpoint; e must be abelian."""
    cur = e
    while True:
        c = common_centralizer_of(cur)
        if c == cur.basis:
            return cur
        for v in c.matrix:
            if tuple(v) not in cur.basis:
                cur = ElementarySubalgebra(cur.d, cur.p, cur.basis + Subspace.span([v], cur.p, c.ambient))
                break


# -- the quotient c/z ------------------------------------------------------------------

@dataclass
class Quotient:
    """A complement of ``base`` in ``top`` together with the bracket in coordinates.

    ``tensor[i, j]`` holds [q_i, q_j] in coordinates on the span of all such
    brackets, so W ⊆ span(q) is abelian iff its bracket vectors vanish there.
    """

    d: DimensionVector
    p: int
    base: Subspace
    top: Subspace
    reps: np.ndarray
    tensor: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def lift(self, rows) -> Subspace:
        rows = np.asarray(rows, dtype=np.int64)
        if rows.size == 0:
            return self.base
        vecs = (rows.reshape(-1, self.dim) @ self.reps) % self.p
        return self.base + Subspace.span(vecs, self.p, self.base.ambient)

    def lift_many(self, stack: np.ndarray) -> list[Subspace]:
        """``lift`` for a stack (N, k, dim) of independent rows, in one batch."""
        n, k, _ = stack.shape
        amb = self.base.ambient
        if n == 0:
            return []
        top = np.broadcast_to(self.base.matrix, (n, self.base.dim, amb))
        vecs = np.einsum("nkj,ja->nka", stack, self.reps) % self.p
        r, _ = batch_rref(np.concatenate([top, vecs], axis=1), self.p)
        keep = self.base.dim + k
        return [Subspace(self.p, amb, tuple(map(tuple, rows))) for rows in r[:, :keep].tolist()]


def complement_rows(base: Subspace, top: Subspace) -> np.ndarray:
    rows, cur = [], base
    for v in top.matrix:
        if tuple(v) not in cur:
            rows.append(v)
            cur = cur + Subspace.span([v], top.p, top.ambient)
    return np.array(rows, dtype=np.int64).reshape(-1, top.ambient)


def bracket_tensor(d: DimensionVector, p: int, reps: np.ndarray) -> np.ndarray:
    positions = nilradical_positions(d)
    mats = [NilElement.from_coords(v, positions, d.size, p).matrix() for v in reps]
    m = len(mats)
    size = d.size
    raw = np.zeros((m, m, size * size), dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            b = ((mats[i] @ mats[j] - mats[j] @ mats[i]) % p).ravel()
            raw[i, j], raw[j, i] = b, (-b) % p
    if m == 0:
        return np.zeros((0, 0, 0), dtype=np.int64)
    _, piv = rref_with_pivots(raw.reshape(m * m, -1), p)
    if not piv:
        return np.zeros((m, m, 0), dtype=np.int64)
    # rows of the RREF are a basis of the bracket span; coordinates are read at pivots
    return raw[:, :, list(piv)] % p


def quotient(d: DimensionVector, p, base: Subspace, top: Subspace) -> Quotient:
    q = _modulus(p)
    reps = complement_rows(base, top)
    return Quotient(d, q, base, top, reps, bracket_tensor(d, q, reps))


def bracket_images(stack: np.ndarray, tensor: np.ndarray, p: int) -> np.ndarray:
    """For stacks (N, k, m) of vectors w_a, the maps v ↦ [v, w_a] as (N, k, m, t).

    Float matmul is exact here: entries stay far below 2^53.
    """
    n, k, m = stack.shape
    t = tensor.shape[2]
    flat = stack.reshape(n * k, m).astype(np.float64)
    tj = tensor.transpose(1, 0, 2).reshape(m, m * t).astype(np.float64)
    out = (flat @ tj).reshape(n, k, m, t)
    return np.rint(out).astype(np.int64) % p


def batch_abelian(stack: np.ndarray, tensor: np.ndarray, p: int) -> np.ndarray:
    """Mask of the stacks (N, k, m) whose rows pairwise commute."""
    n, k, m = stack.shape
    ok = np.ones(n, dtype=bool)
    if k < 2 or tensor.shape[2] == 0 or n == 0:
        return ok
    img = bracket_images(stack, tensor, p)
    for b in range(1, k):
        # [w_a, w_b] = Σ_i w_a[i] (image of w_b)[i]
        vals = np.einsum("nai,nit->nat", stack[:, :b].astype(np.float64), img[:, b].astype(np.float64))
        ok &= ~(np.rint(vals).astype(np.int64) % p).reshape(n, -1).any(axis=1)
    return ok


def batch_centralizer(stack: np.ndarray, tensor: np.ndarray, p: int):
    """Common centralizers of the stacks (N, k, m), grouped by dimension.

    Yields (indices, canonical bases of shape (len(indices), c, m)).  The
    kernel of A is read off from the RREF of [A^T | I]: the rows vanishing on
    the A^T block carry a reduced basis of it in the identity block.
    """
    n, k, m = stack.shape
    t = tensor.shape[2]
    if n == 0:
        return
    if t == 0 or k == 0:
        yield np.arange(n), np.broadcast_to(np.eye(m, dtype=np.int64), (n, m, m)).copy()
        return
    img = bracket_images(stack, tensor, p)            # (n, k, m, t)
    at = img.transpose(0, 2, 1, 3).reshape(n, m, k * t)
    aug = np.concatenate([at, np.broadcast_to(np.eye(m, dtype=np.int64), (n, m, m))], axis=2)
    for start in range(0, n, 1 << 14):
        r, _ = batch_rref(aug[start:start + (1 << 14)], p)
        ra = (r[:, :, :k * t] != 0).any(axis=2).sum(axis=1)
        for g in np.unique(ra):
            sel = np.flatnonzero(ra == g)
            yield sel + start, r[sel, g:, k * t:]


def _rows_key(a: np.ndarray) -> bytes:
    return a.astype(np.int16).tobytes()


def maximal_abelian(tensor: np.ndarray, p: int, chunk: int = 4096) -> list[Subspace]:
    """Maximal abelian subspaces of (F_p^m, tensor), found by extending from points.

    From an abelian B, every maximal W ⊇ B lies in C(B); if C(B) is abelian it
    is the unique such W, otherwise B is extended by each point of C(B).
    Each level is processed as one batch and deduplicated by RREF.
    """
    m = tensor.shape[0]
    if m == 0:
        return [Subspace.zero(p, 0)]
    found: dict[bytes, np.ndarray] = {}
    frontier = projective_points(m, p)[:, None, :]
    while frontier.shape[0]:
        k = frontier.shape[1]
        parts = []
        for idx, c in batch_centralizer(frontier, tensor, p):
            ab = batch_abelian(c, tensor, p) if c.shape[1] > k else np.ones(len(idx), bool)
            for row in c[ab]:
                found.setdefault(_rows_key(row), row)
            rest = np.flatnonzero(~ab)
            if rest.size == 0:
                continue
            coeffs = projective_points(c.shape[1], p)
            for s in range(0, rest.size, chunk):
                part = rest[s:s + chunk]
                u = np.einsum("qc,ncm->nqm", coeffs, c[part]) % p
                base = np.broadcast_to(frontier[idx[part]][:, None], (part.size, coeffs.shape[0], k, m))
                cand = np.concatenate([base, u[:, :, None, :]], axis=2).reshape(-1, k + 1, m)
                r, ranks = batch_rref(cand, p)
                r = r[ranks == k + 1]
                parts.append(np.unique(r.reshape(r.shape[0], -1), axis=0))
        if not parts:
            break
        frontier = np.unique(np.concatenate(parts), axis=0).reshape(-1, k + 1, m)
    return sorted((Subspace(p, m, tuple(tuple(int(v) for v in r) for r in rows))
                   for rows in found.values()), key=lambda s: s.rows)


def _check_cap(m: int, cap: int | None):
    if cap is not None and m > cap:
        raise CapExceeded(f"dim(c/z) = {m} exceeds the enumeration cap {cap}")


def maximal_elementary_at(x: NilElement, d: DimensionVector, p, cap: int | None = DEFAULT_CAP
                          ) -> list[ElementarySubalgebra]:
    """All maximal elementary subalgebras of u containing x, sorted canonically."""
    q = _modulus(p)
    _require_restricted(d, q)
    c = common_centralizer([x], d, q)
    z = _center_of_space(c, d, q)
    qt = quotient(d, q, z, c)
    _check_cap(qt.dim, cap)
    found = maximal_abelian(qt.tensor, q)
    out = []
    for k in sorted({w.dim for w in found}):
        ws = [w.matrix for w in found if w.dim == k]
        group = np.array(ws, dtype=np.int64).reshape(len(ws), k, qt.dim)
        out += [ElementarySubalgebra(d, q, s) for s in qt.lift_many(group)]
    return sorted(out, key=lambda e: e.basis.rows)


def _center_of_space(c: Subspace, d: DimensionVector, q: int) -> Subspace:
    from .cent import CentralizerBasis
    return center_of(CentralizerBasis(d, q, c, False), q).basis


def maximal_elementary_containing(d: DimensionVector, p, cap: int | None = DEFAULT_CAP
                                  ) -> list[ElementarySubalgebra]:
    q = _modulus(p)
    return maximal_elementary_at(richardson(d, q), d, q, cap)


def local_saturation_rank_at(x: NilElement, d: DimensionVector, p, cap: int | None = DEFAULT_CAP) -> int:
    return max(e.dim for e in maximal_elementary_at(x, d, p, cap))


def local_saturation_rank(d: DimensionVector, p, cap: int | None = DEFAULT_CAP) -> int:
    return max(e.dim for e in maximal_elementary_containing(d, p, cap))


def saturation_rank(d: DimensionVector, p, cap: int | None = DEFAULT_CAP) -> int:
    """srk(u), read off at the Richardson element (its orbit is dense in u)."""
    return local_saturation_rank(d, p, cap)


@dataclass
class BoundsReport:
    abelian: bool
    dim_c: int
    dim_z: int
    srk: int
    passed: bool


def lemma43_bounds(d: DimensionVector, p, cap: int | None = DEFAULT_CAP) -> BoundsReport:
    """abelian c ⇒ srk = dim c; otherwise dim Z(c) ≤ srk < dim c."""
    q = _modulus(p)
    _require_restricted(d, q)
    c = centralizer_in_u(d, q)
    z = center_of(c, q)
    srk = saturation_rank(d, q, cap)
    ok = srk == c.dim if c.abelian else z.dim <= srk < c.dim
    return BoundsReport(c.abelian, c.dim, z.dim, srk, ok)


# -- brute-force oracle ----------------------------------------------------------------

def _keys(stack: np.ndarray) -> list[bytes]:
    return [row.tobytes() for row in stack.astype(np.int16)]


def _commuting(stack: np.ndarray, t: np.ndarray, q: int) -> np.ndarray:
    """Pairwise bracket test [w_a, w_b] = Σ_ij w_a[i] w_b[j] t[i, j] for a < b."""
    n, k, m = stack.shape
    form = t.reshape(m, -1).astype(np.float64)
    live = np.arange(n)
    for a in range(k - 1):
        for b in range(a + 1, k):
            sub = stack[live]
            left = (sub[:, a].astype(np.float64) @ form).reshape(live.size, m, t.shape[2])
            val = np.matmul(sub[:, b, None, :].astype(np.float64), left)[:, 0]
            live = live[~(np.rint(val).astype(np.int64) % q).any(axis=1)]
    ok = np.zeros(n, dtype=bool)
    ok[live] = True
    return ok


def brute_force_maximal(x: NilElement, d: DimensionVector, p) -> list[Subspace]:
    """Maximal abelian subspaces of c_u(x) containing the powers of x, by a full sweep.

    Works modulo the span P of x, x^2, ... instead of the center: every
    subspace of c/P is tested for being abelian directly, and an abelian
    subspace is maximal iff no abelian subspace one dimension larger contains it.
    """
    q = _modulus(p)
    c = common_centralizer([x], d, q)
    pw = [y for y in powers(x, d.size) if y.support]
    base = span_of(pw, d, q) if pw else Subspace.zero(q, c.ambient)
    qt = quotient(d, q, base, c)
    m, t = qt.dim, qt.tensor
    abelian: list[np.ndarray] = []
    for k in range(m + 1):
        keep = []
        for stack in grassmannian(m, k, q):
            if k >= 2 and t.shape[2]:
                stack = stack[_commuting(stack, t, q)]
            if stack.shape[0]:
                keep.append(stack)
        level = np.concatenate(keep) if keep else np.zeros((0, k, m), np.int64)
        if level.shape[0] == 0:
            break
        abelian.append(level)
    maximal = []
    for k, level in enumerate(abelian):
        covered: set[bytes] = set()
        if k == 0:
            if len(abelian) > 1:
                continue
        elif k + 1 < len(abelian):
            sub = np.concatenate(list(grassmannian(k + 1, k, q)))
            for start in range(0, abelian[k + 1].shape[0], 512):
                big = abelian[k + 1][start:start + 512]
                combos = np.einsum("sab,nbj->nsaj", sub, big).reshape(-1, k, m) % q
                covered.update(_keys(batch_rref(combos, q)[0]))
        fresh = np.array([key not in covered for key in _keys(level)], dtype=bool)
        maximal += qt.lift_many(level[fresh])
    return sorted(maximal, key=lambda s: s.rows)


# -- table sweep -----------------------------------------------------------------------

TABLE2 = {
    "a1": "singleton", "an": "singleton", "a1,a2": "singleton", "an-1,an": "singleton",
    "a1,an": "singleton", "as": "P1", "ar,an": "P1", "a1,as": "P1",
    "ar,ar+1": "P1xP1", "ar,as": "P1uP1",
}


def variety_points(variety: str, p: int) -> int:
    return {"singleton": 1, "P1": p + 1, "P1xP1": (p + 1) ** 2, "P1uP1": 2 * p + 1}[variety]


def verify_table2(n: int, p, cap: int | None = DEFAULT_CAP, oracle: Iterable[str] = ("ar,as",)
                  ) -> TableReport:
    """Counts, dimensions and family membership for every root placement at rank n.

    Rows listed in ``oracle`` are also recounted by ``brute_force_maximal``.
    """
    q = _modulus(p)
    oracle = set(oracle)
    rep = TableReport(f"table2 n={n} p={q}")
    for key in PATTERNS:
        instances = pattern_instances(n, key)
        if not instances:
            rep.add(Check.skipped(f"table2/{key}", f"no instance of {PATTERN_LABELS[key]} at n={n}"))
            continue
        for roots in instances:
            d = DimensionVector.from_levi(n, roots)
            tag = f"table2/{key}/d={d}"
            if not nullcone_equals_u(d, q):
                rep.add(Check.skipped(tag, f"V(u) != u at p={q}"))
                continue
            try:
                found = maximal_elementary_containing(d, q, cap)
            except CapExceeded as exc:
                rep.add(Check(f"{tag}/count", variety_points(TABLE2[key], q), str(exc), "fail"))
                continue
            x = richardson(d, q)
            expected = variety_points(TABLE2[key], q)
            if key in oracle:
                truth = brute_force_maximal(x, d, q)
                rep.add(Check.compare(f"{tag}/oracle_count", len(truth), len(found)))
                rep.add(Check.compare(f"{tag}/oracle_match", True,
                                      [e.basis for e in found] == truth))
            rep.add(Check.compare(f"{tag}/count", expected, len(found)))
            rep.add(Check.compare(f"{tag}/dims", [n], sorted({e.dim for e in found})))
            rep.add(Check.compare(f"{tag}/contain_x", True, all(e.contains(x) for e in found)))
            members = {e.basis for e in found}
            fam = [theorem44_family(d, pt, q) for pt in family_points(d, q)]
            rep.add(Check.compare(f"{tag}/family_in_enumeration", True,
                                  all(f.basis in members for f in fam)))
            rep.add(Check.compare(f"{tag}/srk", n, max(e.dim for e in found)))
    return rep
