"""Integer linear algebra: Hermite normal form, lattices, fraction-free rank."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def mat_vec(m: Sequence[Sequence[int]], x: Sequence[int]) -> Vec:
    return tuple(dot(row, x) for row in m)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m):
    return tuple(zip(*m))


def identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returned rows are in echelon order with positive pivots, entries above
    each pivot reduced into ``[0, pivot)``; zero rows are dropped.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: list[list[int]] = []
    col = 0
    while a and col < ncols:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        # gcd-reduce the column until a single row carries it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            for j in range(col, ncols):
                piv[j] = -piv[j]
        a = [r for r in a if r is not piv and any(r)]
        out.append(piv)
        col += 1
    # reduce above pivots
    for k, row in enumerate(out):
        p = _pivot(row)
        for prev in out[:k]:
            q = prev[p] // row[p]
            if q:
                for j in range(len(row)):
                    prev[j] -= q * row[j]
    return out


def _pivot(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    raise ValueError("zero row has no pivot")


class Lattice:
    """Sublattice of Z^n with an HNF basis; supports membership and reduction."""

    def __init__(self, generators: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        self.basis = [tuple(r) for r in hnf(generators)]
        self._pivots = [_pivot(r) for r in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, x: Sequence[int]) -> Vec:
        """Canonical representative of ``x`` modulo the lattice."""
        x = list(x)
        for row, p in zip(self.basis, self._pivots):
            q = x[p] // row[p]
            if q:
                for j in range(p, self.dim):
                    x[j] -= q * row[j]
        return tuple(x)

    def __contains__(self, x) -> bool:
        return not any(self.reduce(x))

    def __repr__(self):
        return f"Lattice(rank={self.rank}, basis={self.basis})"


def integer_kernel(a: Sequence[Sequence[int]]) -> list[Vec]:
    """Z-basis of ``{x : a x = 0}`` (``a`` given as a list of rows)."""
    m = len(a)
    n = len(a[0]) if m else 0
    at = [[a[i][j] for i in range(m)] for j in range(n)]
    aug = [at[j] + [int(j == k) for k in range(n)] for j in range(n)]
    red = hnf(aug)
    # echelon rows with zero left block span the zero-left sublattice
    return [tuple(r[m:]) for r in red if not any(r[:m])]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_positive_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion on leading principal minors."""
    n = len(m)
    return all(bareiss_det([row[:k] for row in m[:k]]) > 0 for k in range(1, n + 1))


class SparseEchelon:
    """Incremental fraction-free echelon form over Z (rank over Q).

    Rows are sparse ``{column: int}`` dicts; columns are ordered by the
    integer index supplied by the caller.
    """

    def __init__(self):
        self._rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        r = {k: v for k, v in vec.items() if v}
        while r:
            c = min(r)
            piv = self._rows.get(c)
            if piv is None:
                return r
            a, b = piv[c], r[c]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: fa * v for k, v in r.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - fb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new)
        return r

    def add(self, vec: dict[int, int]) -> bool:
        """Insert ``vec``; return True iff it increased the rank."""
        r = self.reduce(vec)
        if not r:
            return False
        self._rows[min(r)] = _primitive(r)
        return True

    def copy(self) -> "SparseEchelon":
        other = SparseEchelon()
        other._rows = {k: dict(v) for k, v in self._rows.items()}
        return other


def _primitive(r: dict[int, int]) -> dict[int, int]:
    if not r:
        return r
    g = 0
    for v in r.values():
        g = math.gcd(g, v)
    if g > 1:
        return {k: v // g for k, v in r.items()}
    return r
