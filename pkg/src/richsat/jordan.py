"""Jordan partitions and explicit Jordan bases of Richardson elements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Unsupported
from .exact import power_ranks
from .typea import DimensionVector, levi_roots, line_diagram, richardson_matrix


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(v) for v in self.parts), reverse=True))
        if any(v < 1 for v in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip().removeprefix("[").removesuffix("]")
        return cls(tuple(int(s) for s in body.split(",") if s.strip()))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0


def partition_from_ranks(ranks) -> Partition:
    """Block sizes from rank(x^0), rank(x^1), ...: the number of blocks of size m is
    rank(x^{m-1}) - 2 rank(x^m) + rank(x^{m+1})."""
    r = list(ranks) + [0, 0]
    parts = []
    for m in range(1, len(ranks) + 1):
        parts += [m] * (r[m - 1] - 2 * r[m] + r[m + 1])
    return Partition(tuple(parts))


def partition_of(d: DimensionVector) -> Partition:
    return partition_from_ranks(power_ranks(richardson_matrix(d)))


def conjugate(p: Partition) -> Partition:
    return Partition(tuple(sum(1 for v in p.parts if v >= j) for j in range(1, p.largest + 1)))


def gl_centralizer_dim(p: Partition) -> int:
    """Dimension of the centralizer in gl of a nilpotent of type p: Σ_{i,j} min(λ_i, λ_j)."""
    return sum(min(a, b) for a in p.parts for b in p.parts)


@dataclass(frozen=True)
class JordanBasis:
    """Chain generators v_i (as labels of standard basis vectors) and σ.

    ``chains[i]`` lists the labels of v_i, x v_i, x^2 v_i, ... (each
    x^j v_i is a standard basis vector here).  ``sigma[k-1]`` is σ(k).
    """

    d: DimensionVector
    case: int
    generators: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles of σ, each starting at its smallest element."""
        seen, out = set(), []
        for start in range(1, len(self.sigma) + 1):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self.sigma[k - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        return "".join("(" + "".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    def vectors(self) -> np.ndarray:
        """The chain basis as columns, chain by chain: v_i, x v_i, ..."""
        size = self.d.size
        cols = []
        for chain in self.chains:
            for a in chain:
                e = np.zeros(size, dtype=np.int64)
                e[a - 1] = 1
                cols.append(e)
        return np.array(cols, dtype=np.int64).T


def _chain(x: np.ndarray, label: int) -> tuple[int, ...]:
    """Follow x on e_label while the image is again a standard basis vector."""
    out = [label]
    v = np.zeros(x.shape[0], dtype=np.int64)
    v[label - 1] = 1
    while True:
        v = x @ v
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return tuple(out)
        if nz.size != 1 or v[nz[0]] != 1:
            raise ArithmeticError("x(d) does not act as a partial permutation")
        out.append(int(nz[0]) + 1)


def jordan_basis(d: DimensionVector) -> JordanBasis:
    """Chain generators for |Δ(m)| <= 2, following the three constructions:

    1. Δ(m) = {α_r}: v_1 = e_{D_n}, v_2 = e_{D~_1};
    2. Δ(m) = {α_r, α_{r+1}}: v_1 = e_{D_{n-1}}, v_2 = e_{D~_1}, v_3 = e_{D~_2};
    3. Δ(m) = {α_r, α_s}, r < s-1: v_1 = e_{D_{n-1}}, v_2 = e_{D~_2}, x v_2 = e_{D~_1}.

    σ lists the chain vectors x^j v_i by decreasing j, ties broken by i.
    """
    roots = sorted(levi_roots(d).indices)
    diag = line_diagram(d)
    tops, rest = diag.tops, diag.rest
    if len(roots) == 1:
        case, gens = 1, (tops[-1], rest[0])
    elif len(roots) == 2 and roots[1] == roots[0] + 1:
        case, gens = 2, (tops[-1], rest[0], rest[1])
    elif len(roots) == 2:
        case, gens = 3, (tops[-1], rest[1])
    else:
        raise Unsupported(f"Jordan bases are only constructed for 1 or 2 Levi roots, got {len(roots)}")
    x = richardson_matrix(d)
    chains = tuple(_chain(x, g) for g in gens)
    if case == 3 and chains[1][1:2] != (rest[0],):
        raise ArithmeticError(f"x(d) e_{rest[1]} != e_{rest[0]} for d={d}")
    order = sorted(((j, i, a) for i, ch in enumerate(chains) for j, a in enumerate(ch)),
                   key=lambda t: (-t[0], t[1]))
    sigma = tuple(a for _, _, a in order)
    return JordanBasis(d, case, gens, chains, sigma)
