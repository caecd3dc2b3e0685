"""Exact linear algebra over prime fields F_p and over the integers.

Dense matrices are plain ``numpy`` int64 arrays holding residues in
``[0, p)``; every routine reduces its input first, so callers may pass
signed integers.  Primes are small (well below 2**31), so products of two
residues never overflow int64.

Integer ranks use fraction-free (Bareiss) elimination on Python ints and are
therefore exact for any entry size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NonNilpotent


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def next_prime(k: int) -> int:
    """Smallest prime >= k."""
    q = max(k, 2)
    while not is_prime(q):
        q += 1
    return q


def primes_in(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if is_prime(q)]


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"modulus {self.p!r} is not a prime")

    def __int__(self) -> int:
        return self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return pow(a, -1, self.p)

    def reduce(self, m) -> np.ndarray:
        return np.asarray(m, dtype=np.int64) % self.p

    def elements(self) -> range:
        return range(self.p)


def _modulus(p) -> int:
    return p.p if isinstance(p, PrimeField) else int(p)


def as_matrix(m, cols: int | None = None) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(0 if a.size == 0 else 1, -1) if cols is None else a.reshape(-1, cols)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return a


def rref_with_pivots(m, p) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over F_p and its pivot columns."""
    q = _modulus(p)
    a = as_matrix(m) % q
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, q)) % q
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % q
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m, p) -> np.ndarray:
    """Reduced row-echelon form of ``m`` over F_p (zero rows kept at the bottom)."""
    return rref_with_pivots(m, p)[0]


def rank(m, p) -> int:
    return len(rref_with_pivots(m, p)[1])


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F_p^ambient stored by its canonical RREF basis.

    Two subspaces are equal iff their ``rows`` agree, so instances can be
    hashed and deduplicated directly.
    """

    p: int
    ambient: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors, p, ambient: int | None = None) -> "Subspace":
        q = _modulus(p)
        vecs = list(vectors) if not isinstance(vectors, np.ndarray) else vectors
        if ambient is None:
            if len(vecs) == 0:
                raise ValueError("ambient dimension needed for an empty span")
            ambient = len(vecs[0])
        if len(vecs) == 0:
            return cls(q, ambient, ())
        a, piv = rref_with_pivots(np.asarray(vecs, dtype=np.int64).reshape(-1, ambient), q)
        rows = tuple(tuple(int(v) for v in a[i]) for i in range(len(piv)))
        return cls(q, ambient, rows)

    @classmethod
    def zero(cls, p, ambient: int) -> "Subspace":
        return cls(_modulus(p), ambient, ())

    @classmethod
    def full(cls, p, ambient: int) -> "Subspace":
        return cls.span(np.eye(ambient, dtype=np.int64), p, ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.ambient), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(r) if v) for r in self.rows)

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self.matrix)

    def __contains__(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if not v.any():
            return True
        return rank(np.vstack([self.matrix, v]), self.p) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(r in other for r in self.matrix)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.matrix, other.matrix]), self.p, self.ambient)

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of ``v`` in the RREF basis (read off at the pivots)."""
        v = np.asarray(v, dtype=np.int64) % self.p
        c = v[list(self.pivots)] if self.rows else np.zeros(0, dtype=np.int64)
        if not np.array_equal((c @ self.matrix) % self.p, v):
            raise ValueError("vector is not in the subspace")
        return c


def kernel_basis(m, p) -> Subspace:
    """Right null space {v : m v = 0} over F_p as a canonical subspace.

    Rank-nullity is asserted on every call.
    """
    q = _modulus(p)
    a = as_matrix(m)
    ncols = a.shape[1]
    red, piv = rref_with_pivots(a, q)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-red[i, f]) % q
    if basis.size and ((a % q) @ basis.T % q).any():
        raise ArithmeticError("kernel vector fails m v = 0")
    ker = Subspace.span(basis, q, ncols)
    if ker.dim + len(piv) != ncols:
        raise ArithmeticError(
            f"rank-nullity violated: {ker.dim} + {len(piv)} != {ncols}")
    return ker


def integer_rank(m) -> int:
    """Rank over Q of an integer matrix, by Bareiss elimination."""
    a = [[int(v) for v in row] for row in as_matrix(m)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        piv = a[r][c]
        pr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f:
                a[i] = [(piv * ai[j] - f * pr[j]) // prev for j in range(ncols)]
            elif piv != prev:
                a[i] = [(piv * v) // prev for v in ai]
        prev = piv
        r += 1
    return r


def power_ranks(m) -> tuple[int, ...]:
    """(rank m^0, rank m^1, ...) over the integers, ending at the first 0.

    Raises NonNilpotent if m^size is not zero.
    """
    a = [[int(v) for v in row] for row in as_matrix(m)]
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("power_ranks needs a square matrix")
    base = np.array(a, dtype=object).reshape(size, size)
    power = np.identity(size, dtype=object) if size else base
    ranks = [size]
    for _ in range(size):
        if ranks[-1] == 0:
            return tuple(ranks)
        power = power.dot(base)
        ranks.append(integer_rank(power))
    if ranks[-1] != 0:
        raise NonNilpotent("no power up to the size of the matrix vanishes")
    return tuple(ranks)


def batch_rref(a, p) -> tuple[np.ndarray, np.ndarray]:
    """RREF of every matrix in a stack of shape (N, rows, cols), and the ranks.

    Pivot rows are moved to the top, so for full-row-rank inputs the result
    is the canonical basis of each row space.
    """
    q = _modulus(p)
    a = np.array(a, dtype=np.int64) % q
    if a.ndim != 3:
        raise ValueError("expected a stack of matrices")
    nmat, nrows, ncols = a.shape
    ranks = np.zeros(nmat, dtype=np.int64)
    inverse = np.zeros(q, dtype=np.int64)
    inverse[1:] = [pow(v, -1, q) for v in range(1, q)]
    row_ids = np.arange(nrows)
    for c in range(ncols):
        cand = (a[:, :, c] != 0) & (row_ids[None, :] >= ranks[:, None])
        has = cand.any(axis=1)
        idx = np.flatnonzero(has & (ranks < nrows))
        if idx.size == 0:
            continue
        src = np.argmax(cand[idx], axis=1)
        dst = ranks[idx]
        rows_src = a[idx, src, :].copy()
        a[idx, src, :] = a[idx, dst, :]
        a[idx, dst, :] = (rows_src * inverse[rows_src[:, c]][:, None]) % q
        pivot_rows = a[idx, dst, :]
        factors = a[idx, :, c].copy()
        factors[np.arange(idx.size), dst] = 0
        a[idx] = (a[idx] - factors[:, :, None] * pivot_rows[:, None, :]) % q
        ranks[idx] += 1
    return a, ranks


def projective_points(m: int, p) -> np.ndarray:
    """Representatives of P^{m-1}(F_p): nonzero vectors whose first nonzero entry is 1."""
    q = _modulus(p)
    chunks = []
    for lead in range(m):
        rest = m - lead - 1
        tail = (np.arange(q ** rest)[:, None] // q ** np.arange(rest)[None, :]) % q
        block = np.zeros((q ** rest, m), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail[:, ::-1] if rest else tail
        chunks.append(block)
    return np.vstack(chunks) if chunks else np.zeros((0, m), dtype=np.int64)


def grassmannian(m: int, k: int, p, chunk: int = 1 << 16):
    """Yield stacks of canonical RREF bases (N, k, m) of all k-dim subspaces of F_p^m.

    Subspaces are grouped by pivot pattern; within a pattern the free
    entries run over all of F_p.
    """
    from itertools import combinations
    q = _modulus(p)
    if k == 0:
        yield np.zeros((1, 0, m), dtype=np.int64)
        return
    for piv in combinations(range(m), k):
        pset = set(piv)
        free = [(r, j) for r in range(k) for j in range(piv[r] + 1, m) if j not in pset]
        total = q ** len(free)
        weights = q ** np.arange(len(free), dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            out = np.zeros((idx.size, k, m), dtype=np.int64)
            for r, c in enumerate(piv):
                out[:, r, c] = 1
            if free:
                digits = (idx[:, None] // weights[None, :]) % q
                for t, (r, j) in enumerate(free):
                    out[:, r, j] = digits[:, t]
            yield out


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dim subspaces of F_q^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def matmul(a, b, p) -> np.ndarray:
    q = _modulus(p)
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % q


def stack_rows(vectors: Iterable[Sequence[int]], ambient: int) -> np.ndarray:
    rows = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not rows:
        return np.zeros((0, ambient), dtype=np.int64)
    return np.vstack(rows)
