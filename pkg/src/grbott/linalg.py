"""Exact linear algebra: GF(2) bit matrices and integer Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Gf2Matrix:
    """A GF(2) matrix stored as one integer bitmask per row.

    Bit ``c`` of ``rows[r]`` is the entry in row ``r``, column ``c``.
    """

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row bitmask exceeds column count")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        entries = [list(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            mask = 0
            for c, v in enumerate(r):
                if v not in (0, 1):
                    raise ValueError(f"entry {v!r} is not a GF(2) value")
                if v:
                    mask |= 1 << c
            rows.append(mask)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(row >> c) & 1 for c in range(self.ncols)] for row in self.rows]

    def det(self) -> int:
        return gf2_det(self)

    def rank(self) -> int:
        return gf2_rank(self)


def _as_gf2(m) -> Gf2Matrix:
    if isinstance(m, Gf2Matrix):
        return m
    return Gf2Matrix.from_lists(m)


def _eliminate(rows: list[int], ncols: int) -> int:
    """Row-reduce ``rows`` in place; return the rank."""
    rank = 0
    for c in range(ncols):
        bit = 1 << c
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= p
        rank += 1
        if rank == len(rows):
            break
    return rank


def masks_independent(rows: Iterable[int]) -> bool:
    """Whether the bitmask rows are linearly independent over GF(2)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
        else:
            return False
    return True


def gf2_det(m) -> int:
    """Determinant over GF(2) of a square matrix (0 or 1)."""
    m = _as_gf2(m)
    if m.nrows != m.ncols:
        raise ValueError(f"determinant of non-square {m.nrows}x{m.ncols} matrix")
    return int(masks_independent(m.rows))


def gf2_rank(m) -> int:
    m = _as_gf2(m)
    return _eliminate(list(m.rows), m.ncols)


def gf2_rank_of_masks(rows: Iterable[int], ncols: int) -> int:
    """Rank of a list of row bitmasks; skips building a :class:`Gf2Matrix`."""
    return _eliminate(list(rows), ncols)


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------


def _int_rows(m) -> list[list[int]]:
    rows = [[int(v) for v in r] for r in m]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
    return rows


def int_det(m) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = _int_rows(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Works on Python integers, so entries never overflow.
    """
    a = _int_rows(m)
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]

        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    done = False
            if not done:
                # a smaller remainder appeared; move it to the pivot slot
                best = min(
                    [(i, t) for i in range(t, nr) if a[i][t]]
                    + [(t, j) for j in range(t, nc) if a[t][j]],
                    key=lambda ij: abs(a[ij[0]][ij[1]]),
                )
                i, j = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility: pivot must divide the whole trailing block
            p = a[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is not None:
                i, _ = bad
                for j in range(t, nc):
                    a[t][j] += a[i][j]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def minors_gcd(m, size: int) -> int:
    """gcd of all ``size`` x ``size`` minors (brute force, for small matrices)."""
    from itertools import combinations

    a = _int_rows(m)
    nr = len(a)
    nc = len(a[0]) if nr else 0
    g = 0
    for rs in combinations(range(nr), size):
        for cs in combinations(range(nc), size):
            g = gcd(g, int_det([[a[r][c] for c in cs] for r in rs]))
    return g
