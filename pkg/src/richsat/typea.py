"""Type A root data for standard parabolics P(d) of SL(n+1).

Labels of the dots of the horizontal line diagram are 1-based and assigned
column by column, top-down, so column c of d holds the labels
``D_c, ..., D_c + d_c - 1`` with ``D_c = 1 + d_1 + ... + d_{c-1}``.
Matrix positions ``(i, j)`` use the same 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import NotRichardson, ParseError
from .exact import PrimeField


@dataclass(frozen=True)
class DimensionVector:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(v) for v in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a dimension vector needs at least one part")
        if any(v < 1 for v in parts):
            raise ValueError(f"parts must be positive: {parts}")

    @classmethod
    def parse(cls, text: str) -> "DimensionVector":
        """Parse comma separated decimal text such as ``"3,2,3,1"``."""
        pieces = [s.strip() for s in str(text).strip().split(",")]
        if not pieces or any(not s for s in pieces):
            raise ParseError(f"empty entry in dimension vector {text!r}")
        try:
            parts = tuple(int(s, 10) for s in pieces)
        except ValueError:
            raise ParseError(f"non-integer entry in dimension vector {text!r}") from None
        if any(v < 1 for v in parts):
            raise ParseError(f"dimension vector entries must be >= 1: {text!r}")
        return cls(parts)

    @classmethod
    def from_levi(cls, n: int, roots: Iterable[int]) -> "DimensionVector":
        """The unique d in rank n whose Levi has simple roots ``roots``."""
        roots = set(roots)
        if any(not 1 <= i <= n for i in roots):
            raise ValueError(f"simple root index out of range 1..{n}: {sorted(roots)}")
        parts = [1]
        for i in range(1, n + 1):
            if i in roots:
                parts[-1] += 1
            else:
                parts.append(1)
        return cls(tuple(parts))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return self.size - 1

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        cols, start = [], 1
        for dc in self.parts:
            cols.append(tuple(range(start, start + dc)))
            start += dc
        return tuple(cols)

    @cached_property
    def column_index(self) -> Mapping[int, int]:
        """label -> 0-based column."""
        return {a: c for c, col in enumerate(self.columns) for a in col}


def compositions(total: int) -> Iterator[DimensionVector]:
    """All dimension vectors with the given sum, in lexicographic order of cut sets."""
    for mask in range(1 << (total - 1)):
        parts, run = [], 1
        for i in range(total - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield DimensionVector(tuple(parts))


def all_dimension_vectors(max_n: int, min_n: int = 0) -> Iterator[DimensionVector]:
    for n in range(min_n, max_n + 1):
        yield from compositions(n + 1)


@dataclass(frozen=True)
class LeviRoots:
    n: int
    indices: frozenset[int]

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __iter__(self):
        return iter(sorted(self.indices))

    def __str__(self) -> str:
        return "{" + ", ".join(f"α_{i}" for i in self) + "}"


def levi_roots(d: DimensionVector) -> LeviRoots:
    boundaries, acc = set(), 0
    for dc in d.parts[:-1]:
        acc += dc
        boundaries.add(acc)
    return LeviRoots(d.n, frozenset(i for i in range(1, d.n + 1) if i not in boundaries))


def nilradical_positions(d: DimensionVector) -> tuple[tuple[int, int], ...]:
    """Positions (i, j) with i in a strictly earlier column than j, sorted."""
    col = d.column_index
    return tuple((i, j) for i in range(1, d.size + 1) for j in range(i + 1, d.size + 1)
                 if col[i] < col[j])


def nilradical_dim(d: DimensionVector) -> int:
    return sum(a * b for a, b in combinations(d.parts, 2))


@dataclass(frozen=True)
class LineDiagram:
    d: DimensionVector
    columns: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]
    tops: tuple[int, ...]
    rest: tuple[int, ...]

    @property
    def coords(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The tuple (D_1, ..., D_r | D~_1, ..., D~_q)."""
        return self.tops, self.rest

    def format_coords(self) -> str:
        return "(%s | %s)" % (",".join(map(str, self.tops)), ",".join(map(str, self.rest)))

    @cached_property
    def line_of(self) -> Mapping[int, int]:
        """label -> 1-based horizontal line number."""
        return {a: i + 1 for i, row in enumerate(self.rows) for a in row}

    @cached_property
    def successor(self) -> Mapping[int, int]:
        return {row[k]: row[k + 1] for row in self.rows for k in range(len(row) - 1)}

    @cached_property
    def predecessor(self) -> Mapping[int, int]:
        return {b: a for a, b in self.successor.items()}

    def edges(self) -> list[tuple[int, int]]:
        """Consecutive pairs on the horizontal lines, line by line."""
        return [(row[k], row[k + 1]) for row in self.rows for k in range(len(row) - 1)]


def line_diagram(d: DimensionVector) -> LineDiagram:
    cols = d.columns
    height = max(d.parts)
    rows = tuple(tuple(col[i] for col in cols if len(col) > i) for i in range(height))
    tops = tuple(col[0] for col in cols)
    rest = tuple(a for col in cols for a in col[1:])
    return LineDiagram(d, cols, rows, tops, rest)


class NilElement:
    """A strictly upper triangular matrix over F_p stored sparsely.

    ``support`` maps 1-based positions (i, j), i < j, to nonzero residues.
    Instances are immutable and hashable.
    """

    __slots__ = ("size", "p", "_items", "_hash")

    def __init__(self, size: int, p: int, support: Mapping[tuple[int, int], int] | None = None):
        self.size = int(size)
        self.p = int(p)
        items = []
        for (i, j), c in (support or {}).items():
            c = int(c) % self.p
            if not c:
                continue
            if not (1 <= i < j <= self.size):
                raise ValueError(f"position {(i, j)} is not strictly upper in size {self.size}")
            items.append(((int(i), int(j)), c))
        self._items = tuple(sorted(items))
        self._hash = hash((self.size, self.p, self._items))

    @classmethod
    def elementary(cls, size: int, p: int, i: int, j: int, c: int = 1) -> "NilElement":
        return cls(size, p, {(i, j): c})

    @classmethod
    def from_matrix(cls, m, p: int) -> "NilElement":
        m = np.asarray(m, dtype=np.int64) % p
        n = m.shape[0]
        if np.tril(m).any():
            raise ValueError("matrix is not strictly upper triangular")
        return cls(n, p, {(int(i) + 1, int(j) + 1): int(m[i, j]) for i, j in zip(*np.nonzero(m))})

    @classmethod
    def from_coords(cls, vec, positions, size: int, p: int) -> "NilElement":
        return cls(size, p, {pos: int(c) for pos, c in zip(positions, vec)})

    @property
    def support(self) -> dict[tuple[int, int], int]:
        return dict(self._items)

    def __getitem__(self, pos: tuple[int, int]) -> int:
        return self.support.get(pos, 0)

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        return (isinstance(other, NilElement) and self.size == other.size
                and self.p == other.p and self._items == other._items)

    def __hash__(self) -> int:
        return self._hash

    def _check(self, other: "NilElement"):
        if self.size != other.size or self.p != other.p:
            raise ValueError("elements live in different algebras")

    def __add__(self, other: "NilElement") -> "NilElement":
        self._check(other)
        s = self.support
        for pos, c in other:
            s[pos] = s.get(pos, 0) + c
        return NilElement(self.size, self.p, s)

    def __neg__(self) -> "NilElement":
        return NilElement(self.size, self.p, {pos: -c for pos, c in self})

    def __sub__(self, other: "NilElement") -> "NilElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "NilElement":
        return NilElement(self.size, self.p, {pos: k * c for pos, c in self})

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=np.int64)
        for (i, j), c in self._items:
            m[i - 1, j - 1] = c
        return m

    def __matmul__(self, other: "NilElement") -> "NilElement":
        self._check(other)
        return NilElement.from_matrix(self.matrix() @ other.matrix() % self.p, self.p)

    def __pow__(self, k: int) -> "NilElement":
        if k < 1:
            raise ValueError("only positive powers stay inside the nilradical")
        m = self.matrix()
        acc = m.copy()
        for _ in range(k - 1):
            acc = acc @ m % self.p
        return NilElement.from_matrix(acc, self.p)

    def bracket(self, other: "NilElement") -> "NilElement":
        self._check(other)
        a, b = self.matrix(), other.matrix()
        return NilElement.from_matrix((a @ b - b @ a) % self.p, self.p)

    def coords(self, positions) -> np.ndarray:
        s = self.support
        extra = set(s) - set(positions)
        if extra:
            raise ValueError(f"support leaves the given positions: {sorted(extra)}")
        return np.array([s.get(pos, 0) for pos in positions], dtype=np.int64)

    def in_nilradical(self, d: DimensionVector) -> bool:
        col = d.column_index
        return self.size == d.size and all(col[i] < col[j] for (i, j), _ in self)

    def __repr__(self) -> str:
        return f"NilElement({self.size}, p={self.p}, {self})"

    def __str__(self) -> str:
        if not self._items:
            return "0"
        terms = []
        for (i, j), c in self._items:
            coef = "" if c == 1 else ("-" if c == self.p - 1 else f"{c}*")
            terms.append(f"{coef}e_{i},{j}")
        return " + ".join(terms)


def elem(d: DimensionVector, p: int, *terms) -> NilElement:
    """Build a nilradical element from ``(i, j)`` or ``(i, j, coeff)`` tuples."""
    support: dict[tuple[int, int], int] = {}
    for t in terms:
        i, j, c = (t[0], t[1], t[2] if len(t) > 2 else 1)
        support[(i, j)] = support.get((i, j), 0) + c
    x = NilElement(d.size, p, support)
    if not x.in_nilradical(d):
        raise ValueError(f"{x} is not in the nilradical of P({d})")
    return x


def richardson(d: DimensionVector, p: PrimeField | int) -> NilElement:
    """x(d): the sum of e_{a,b} over consecutive dots a - b on each horizontal line."""
    q = int(p.p if isinstance(p, PrimeField) else p)
    return NilElement(d.size, q, {e: 1 for e in line_diagram(d).edges()})


def richardson_matrix(d: DimensionVector) -> np.ndarray:
    """x(d) as a 0/1 integer matrix."""
    m = np.zeros((d.size, d.size), dtype=np.int64)
    for a, b in line_diagram(d).edges():
        m[a - 1, b - 1] = 1
    return m


def row_decomposition(x: NilElement, d: DimensionVector) -> list[NilElement]:
    """Split x(d) = x_1 + ... + x_s into the per-line summands."""
    if x != richardson(d, x.p):
        raise NotRichardson(f"{x} is not the Richardson element of P({d})")
    diag = line_diagram(d)
    return [NilElement(d.size, x.p, {(row[k], row[k + 1]): 1 for k in range(len(row) - 1)})
            for row in diag.rows]


# -- Levi patterns with at most two simple roots --------------------------------------
# Keys name the rows of the classification tables; "r", "s" stand for interior indices.

PATTERNS = (
    "a1", "as", "an",
    "a1,a2", "an-1,an", "ar,ar+1",
    "a1,an", "ar,an", "a1,as", "ar,as",
)

PATTERN_LABELS = {
    "a1": "α_1",
    "as": "α_s (1<s<n)",
    "an": "α_n",
    "a1,a2": "α_1, α_2",
    "an-1,an": "α_{n-1}, α_n",
    "ar,ar+1": "α_r, α_{r+1} (1<r<n-1)",
    "a1,an": "α_1, α_n",
    "ar,an": "α_r, α_n (1<r<n-1)",
    "a1,as": "α_1, α_s (2<s<n)",
    "ar,as": "α_r, α_s (1<r<s-1<n-1)",
}


def levi_pattern(n: int, roots: Iterable[int]) -> str:
    """Classify a Levi root set with one or two roots into a pattern key.

    Raises ValueError for other sizes and for ranks too small to separate the
    cases (n < 2 with one root, n < 3 with two roots).
    """
    rs = sorted(set(roots))
    if len(rs) == 1 and n >= 2:
        (s,) = rs
        return "a1" if s == 1 else "an" if s == n else "as"
    if len(rs) == 2 and n >= 3:
        r, s = rs
        if s == r + 1:
            return "a1,a2" if r == 1 else "an-1,an" if s == n else "ar,ar+1"
        if r == 1:
            return "a1,an" if s == n else "a1,as"
        return "ar,an" if s == n else "ar,as"
    raise ValueError(f"no pattern for roots {rs} at n={n}")


def pattern_instances(n: int, key: str) -> list[tuple[int, ...]]:
    """Every root set at rank n belonging to pattern ``key`` (possibly none)."""
    if key not in PATTERNS:
        raise KeyError(key)
    out = []
    if "," not in key:
        cands: Iterable[tuple[int, ...]] = ((s,) for s in range(1, n + 1))
    else:
        cands = combinations(range(1, n + 1), 2)
    for rs in cands:
        try:
            if levi_pattern(n, rs) == key:
                out.append(tuple(rs))
        except ValueError:
            pass
    return out


def pattern_of(d: DimensionVector) -> str:
    return levi_pattern(d.n, levi_roots(d).indices)
