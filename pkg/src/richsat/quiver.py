"""The quiver Q(d), its paths, and the isomorphism u ≅ rad KQ(d)/J.

A path is stored as its vertex sequence; Q(d) has no multiple arrows, so the
sequence determines the arrows.  Paths compose left to right: ``ab`` is
``a`` followed by ``b``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from .exact import PrimeField, rank
from .typea import DimensionVector, line_diagram, nilradical_positions

Path = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: frozenset[tuple[int, int]]
    # arrows coming from horizontal lines of the diagram
    line_arrows: frozenset[tuple[int, int]] = field(default=frozenset())

    def __post_init__(self):
        for s, t in self.arrows:
            if s == t:
                raise ValueError(f"loop at {s}")
            if s not in self.vertices or t not in self.vertices:
                raise ValueError(f"arrow {(s, t)} leaves the vertex set")

    @cached_property
    def out_arrows(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for s, t in sorted(self.arrows):
            out[s].append(t)
        return out

    def sorted_arrows(self) -> list[tuple[int, int]]:
        return sorted(self.arrows)


def build_quiver(d: DimensionVector) -> Quiver:
    """Arrows: consecutive dots on a horizontal line, plus every pair of dots
    in adjacent columns (left to right)."""
    diag = line_diagram(d)
    cols = d.columns
    adjacent = {(a, b) for c in range(len(cols) - 1) for a in cols[c] for b in cols[c + 1]}
    line = frozenset(diag.edges())
    return Quiver(tuple(range(1, d.size + 1)), frozenset(adjacent | line), line)


def paths_from(q: Quiver, source: int) -> Iterator[Path]:
    stack: list[Path] = [(source,)]
    while stack:
        path = stack.pop()
        for t in q.out_arrows[path[-1]]:
            ext = path + (t,)
            yield ext
            stack.append(ext)


def all_paths(q: Quiver) -> list[Path]:
    """Every directed path of length >= 1, sorted."""
    return sorted(p for v in q.vertices for p in paths_from(q, v))


def compose(a: Path, b: Path) -> Path | None:
    """Product ab in the path algebra (None for zero)."""
    if a[-1] != b[0]:
        return None
    return a + b[1:]


def parallel_classes(paths) -> dict[tuple[int, int], list[Path]]:
    classes: dict[tuple[int, int], list[Path]] = defaultdict(list)
    for p in paths:
        classes[(p[0], p[-1])].append(p)
    return dict(classes)


def commutativity_relations(paths) -> list[tuple[Path, Path]]:
    """Generators ω1 − ω2, one per pair of parallel paths (enumerated on demand)."""
    out = []
    for cls in parallel_classes(paths).values():
        for i in range(len(cls)):
            for j in range(i + 1, len(cls)):
                out.append((cls[i], cls[j]))
    return out


@dataclass
class IsoReport:
    d: DimensionVector
    num_paths: int
    num_positions: int
    relation_rank: int
    surjective: bool
    dimension_ok: bool
    ideal_closed: bool
    bracket_ok: bool
    bracket_pairs: int

    @property
    def quotient_dim(self) -> int:
        return self.num_paths - self.relation_rank

    @property
    def passed(self) -> bool:
        return self.surjective and self.dimension_ok and self.ideal_closed and self.bracket_ok

    def as_dict(self) -> dict:
        return {
            "d": str(self.d),
            "paths": self.num_paths,
            "positions": self.num_positions,
            "relations": self.relation_rank,
            "quotient_dim": self.quotient_dim,
            "surjective": self.surjective,
            "dimension": self.dimension_ok,
            "ideal_closed": self.ideal_closed,
            "bracket": self.bracket_ok,
        }


def _relation_matrix(rels, index, width) -> np.ndarray:
    m = np.zeros((len(rels), width), dtype=np.int64)
    for k, (w1, w2) in enumerate(rels):
        m[k, index[w1]] += 1
        m[k, index[w2]] -= 1
    return m


def verify_phi_isomorphism(d: DimensionVector, p: PrimeField | int,
                           max_bracket_pairs: int | None = None) -> IsoReport:
    """Check that ρ ↦ e_{s(ρ),t(ρ)} induces u ≅ rad KQ(d)/J.

    (a) surjectivity onto the position basis of u; (b) the span of all
    commutativity relations has codimension dim u in the path space and is a
    two-sided ideal; (c) φ[a,b]_Q = [φa, φb] for pairs of paths, with the
    path-algebra bracket computed by concatenation and the right-hand side by
    matrix multiplication.
    """
    q = int(p.p if isinstance(p, PrimeField) else p)
    quiv = build_quiver(d)
    paths = all_paths(quiv)
    positions = set(nilradical_positions(d))
    index = {w: k for k, w in enumerate(paths)}

    surjective = {(w[0], w[-1]) for w in paths} == positions

    rels = commutativity_relations(paths)
    rel_m = _relation_matrix(rels, index, len(paths))
    rel_rank = rank(rel_m, q) if rels else 0
    dimension_ok = len(paths) - rel_rank == len(positions)

    # J must absorb multiplication by arrows on both sides; a spanning set
    # (consecutive pairs inside each parallel class) is enough to test this
    spanning = [(c[k], c[k + 1]) for c in parallel_classes(paths).values()
                for k in range(len(c) - 1)]
    ideal_closed = True
    products = []
    for w1, w2 in spanning:
        for a in quiv.sorted_arrows():
            for u, v in ((compose(a, w1), compose(a, w2)), (compose(w1, a), compose(w2, a))):
                if (u is None) != (v is None):
                    ideal_closed = False
                elif u is not None:
                    products.append((u, v))
    if ideal_closed and products:
        both = _relation_matrix(spanning + products, index, len(paths))
        ideal_closed = rank(both, q) == rel_rank

    size = d.size

    def phi(w: Path) -> np.ndarray:
        m = np.zeros((size, size), dtype=np.int64)
        m[w[0] - 1, w[-1] - 1] = 1
        return m

    pairs = [(a, b) for a in paths for b in paths]
    if max_bracket_pairs is not None and len(pairs) > max_bracket_pairs:
        step = len(pairs) // max_bracket_pairs + 1
        pairs = pairs[::step]
    bracket_ok = True
    for a, b in pairs:
        lhs = np.zeros((size, size), dtype=np.int64)
        ab, ba = compose(a, b), compose(b, a)
        if ab is not None:
            lhs += phi(ab)
        if ba is not None:
            lhs -= phi(ba)
        pa, pb = phi(a), phi(b)
        rhs = pa @ pb - pb @ pa
        if not np.array_equal(lhs % q, rhs % q):
            bracket_ok = False
            break

    return IsoReport(d, len(paths), len(positions), rel_rank, surjective,
                     dimension_ok, ideal_closed, bracket_ok, len(pairs))


def dot_export(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in q.vertices]
    lines += [f"  {s} -> {t};" for s, t in q.sorted_arrows()]
    lines.append("}")
    return "\n".join(lines) + "\n"
