"""Independent reference computations used to cross-check the package.

Nothing here imports richsat: x(d) is rebuilt from the line diagram, ranks
come from sympy over Q or from a plain-list elimination mod p.
"""

from __future__ import annotations

import sympy


def labels(d):
    """Column-major labels, one list per column."""
    out, k = [], 1
    for size in d:
        out.append(list(range(k, k + size)))
        k += size
    return out


def richardson_pairs(d):
    """Edges (a, b) of x(d): consecutive dots on each horizontal line."""
    cols = labels(d)
    edges = []
    for h in range(max(d)):
        line = [c[h] for c in cols if len(c) > h]
        edges += list(zip(line, line[1:]))
    return sorted(edges)


def nil_positions(d):
    col = {a: c for c, labs in enumerate(labels(d)) for a in labs}
    size = sum(d)
    return [(i, j) for i in range(1, size + 1) for j in range(1, size + 1) if col[i] < col[j]]


def richardson_sympy(d):
    size = sum(d)
    m = sympy.zeros(size, size)
    for a, b in richardson_pairs(d):
        m[a - 1, b - 1] = 1
    return m


def centralizer_dim_q(d) -> int:
    """dim c_u(x(d)) over Q: nullity of y ↦ [x, y] on u."""
    x = richardson_sympy(d)
    size = sum(d)
    pos = nil_positions(d)
    cols = []
    for i, j in pos:
        e = sympy.zeros(size, size)
        e[i - 1, j - 1] = 1
        cols.append(list(x * e - e * x))
    a = sympy.Matrix(cols).T
    return len(pos) - a.rank()


def partition_q(d) -> list[int]:
    x = richardson_sympy(d)
    size = sum(d)
    ranks, p = [size], sympy.eye(size)
    while ranks[-1]:
        p = p * x
        ranks.append(p.rank())
    ranks += [0]
    parts = []
    for m in range(1, len(ranks) - 1):
        parts += [m] * (ranks[m - 1] - 2 * ranks[m] + ranks[m + 1])
    return sorted(parts, reverse=True)


def rank_mod_p(rows, p) -> int:
    """Gaussian elimination on lists of ints."""
    m = [[v % p for v in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
