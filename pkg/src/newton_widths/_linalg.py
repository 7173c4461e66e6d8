"""Tiny exact linear algebra over Fraction vectors.

Everything here works on tuples of Fractions and never rounds; the problem
sizes (d <= 4, a few dozen rows) make Gaussian elimination with exact
rationals entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[Fraction, ...]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def as_fractions(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    vecs = [list(v) for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return 0
    _, pivots = _rref(vecs)
    return len(pivots)


def null_space(vectors: Sequence[Sequence[Fraction]], dim: int) -> list[Vector]:
    """Basis of {x in Q^dim : <v, x> = 0 for every v}."""
    vecs = [list(as_fractions(v)) for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    rref, pivots = _rref(vecs)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * dim
        x[fc] = Fraction(1)
        for row, pc in zip(rref, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve M x = rhs for square M; returns None when M is singular."""
    n = len(matrix)
    aug = [list(as_fractions(row)) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot_row is None:
            return None
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def primitive(v: Sequence[Fraction]) -> Vector:
    """Scale a nonzero rational vector to a primitive integer vector, keeping direction."""
    denoms = [Fraction(x).denominator for x in v]
    m = 1
    for d in denoms:
        m = m * d // gcd(m, d)
    ints = [int(Fraction(x) * m) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(Fraction(x // g) for x in ints)
