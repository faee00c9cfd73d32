"""Vector matrices of small covers over a product of simplices.

A :class:`VectorMatrix` holds the ``k x n`` GF(2) matrix whose row ``j`` is the
characteristic vector assigned to the facet ``F^j_0`` of
``P = Delta^{n_1} x ... x Delta^{n_k}``.  Columns are grouped block-major:
block ``i`` spans ``n_i`` consecutive columns.  Indices in the public API are
zero-based; ``a(j, i, l)`` is the entry of row ``j`` in column ``l`` of block
``i``.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .linalg import Gf2Matrix, gf2_det, masks_independent


class InvalidMatrix(ValueError):
    """Raised for input that does not match the matrix schema."""


class NotTriangulable(ValueError):
    """No block order makes the matrix upper triangular."""


class NotNormalized(ValueError):
    """The operation needs a unipotent upper-triangular matrix."""


@dataclass(frozen=True)
class VectorMatrix:
    dims: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "rows", rows)
        if not dims:
            raise InvalidMatrix("dims must be non-empty")
        if any(d < 1 for d in dims):
            raise InvalidMatrix(f"block sizes must be positive, got {dims}")
        if len(rows) != len(dims):
            raise InvalidMatrix(f"expected {len(dims)} rows, got {len(rows)}")
        n = sum(dims)
        for j, r in enumerate(rows):
            if len(r) != n:
                raise InvalidMatrix(f"row {j + 1} has length {len(r)}, expected {n}")
            if any(v not in (0, 1) for v in r):
                raise InvalidMatrix(f"row {j + 1} has entries outside {{0, 1}}")
        offsets, acc = [], 0
        for d in dims:
            offsets.append(acc)
            acc += d
        # derived data, not dataclass fields: equality and hashing ignore it
        object.__setattr__(self, "_offsets", tuple(offsets))
        object.__setattr__(self, "_unipotent", None)
        object.__setattr__(self, "_row_masks", tuple(
            sum(1 << c for c, v in enumerate(r) if v) for r in rows
        ))

    # -- shape ------------------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> tuple[int, ...]:
        """First flat column of each block."""
        return self._offsets

    def col(self, i: int, l: int) -> int:
        """Flat column index of column ``l`` (0-based) of block ``i``."""
        return self.offsets[i] + l

    def a(self, j: int, i: int, l: int) -> int:
        return self.rows[j][self._offsets[i] + l]

    def block(self, j: int, i: int) -> tuple[int, ...]:
        off = self.offsets[i]
        return self.rows[j][off:off + self.dims[i]]

    def row_mask(self, j: int) -> int:
        """Row ``j`` as a bitmask over the ``n`` columns."""
        return self._row_masks[j]

    def row_sum(self, j: int) -> int:
        return sum(self.rows[j])

    # -- constructors / serialization --------------------------------------

    @classmethod
    def from_blocks(cls, dims: Sequence[int], blocks) -> "VectorMatrix":
        """Build from ``blocks[j][i]``, the list of entries of block ``i`` in row ``j``."""
        rows = []
        for j in range(len(dims)):
            row = []
            for i, d in enumerate(dims):
                b = list(blocks[j][i])
                if len(b) != d:
                    raise InvalidMatrix(f"block ({j + 1},{i + 1}) has length {len(b)}, expected {d}")
                row.extend(b)
            rows.append(row)
        return cls(tuple(dims), tuple(map(tuple, rows)))

    @classmethod
    def unipotent(cls, dims: Sequence[int], upper: dict | None = None) -> "VectorMatrix":
        """Upper-triangular unipotent matrix with given strictly-upper blocks.

        ``upper`` maps ``(j, i)`` with ``j < i`` to the entries of that block;
        missing blocks are zero.
        """
        upper = upper or {}
        dims = tuple(dims)
        blocks = []
        for j in range(len(dims)):
            row = []
            for i, d in enumerate(dims):
                if i == j:
                    row.append([1] * d)
                elif i > j and (j, i) in upper:
                    row.append(list(upper[(j, i)]))
                else:
                    row.append([0] * d)
            blocks.append(row)
        return cls.from_blocks(dims, blocks)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "rows": [list(r) for r in self.rows]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "VectorMatrix":
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InvalidMatrix(f"malformed JSON: {exc}") from exc
        if not isinstance(data, dict) or set(data) != {"dims", "rows"}:
            raise InvalidMatrix('expected an object with keys "dims" and "rows"')
        dims, rows = data["dims"], data["rows"]
        if not isinstance(dims, list) or not all(type(d) is int for d in dims):
            raise InvalidMatrix("dims must be a list of integers")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InvalidMatrix("rows must be a list of lists")
        if not all(type(v) is int for r in rows for v in r):
            raise InvalidMatrix("matrix entries must be integers 0/1")
        return cls(tuple(dims), tuple(tuple(r) for r in rows))

    # -- structure -----------------------------------------------------------

    def conjugate(self, perm: Sequence[int]) -> "VectorMatrix":
        """Reorder blocks: new block ``t`` is old block ``perm[t]``.

        This is ``E A E^-1`` for the block permutation matrix ``E``: rows and
        column blocks are permuted together, columns inside a block keep
        their order.
        """
        perm = tuple(perm)
        if sorted(perm) != list(range(self.k)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.k - 1}")
        dims = tuple(self.dims[p] for p in perm)
        rows = []
        for p in perm:
            row = []
            for q in perm:
                row.extend(self.block(p, q))
            rows.append(tuple(row))
        return VectorMatrix(dims, tuple(rows))

    def is_upper_unipotent(self) -> bool:
        if self._unipotent is None:
            object.__setattr__(self, "_unipotent", self._check_unipotent())
        return self._unipotent

    def _check_unipotent(self) -> bool:
        for j in range(self.k):
            for i in range(self.k):
                b = self.block(j, i)
                if i == j and not all(b):
                    return False
                if i < j and any(b):
                    return False
        return True

    def require_normalized(self) -> None:
        if not self.is_upper_unipotent():
            raise NotNormalized("matrix is not unipotent upper triangular; call normalize() first")

    def is_real_bott(self) -> bool:
        return all(d == 1 for d in self.dims)


# ---------------------------------------------------------------------------
# Validity
# ---------------------------------------------------------------------------


def submatrix(A: VectorMatrix, choice: Sequence[int]) -> Gf2Matrix:
    """The ``k x k`` matrix with ``(p, i)`` entry ``a(p, i, choice[i])``."""
    if len(choice) != A.k:
        raise IndexError(f"need {A.k} column choices, got {len(choice)}")
    for i, c in enumerate(choice):
        if not 0 <= c < A.dims[i]:
            raise IndexError(f"column choice {c} out of range for block {i} of size {A.dims[i]}")
    cols = [A.col(i, c) for i, c in enumerate(choice)]
    return Gf2Matrix.from_lists([[A.rows[p][c] for c in cols] for p in range(A.k)])


def principal_minors(m: Gf2Matrix) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(index_set, minor)`` for every non-empty principal minor."""
    for size in range(1, m.nrows + 1):
        for idx in combinations(range(m.nrows), size):
            sub = [[m.entry(r, c) for c in idx] for r in idx]
            yield idx, gf2_det(sub)


def first_failing_minor(A: VectorMatrix):
    """Return ``(choice, index_set)`` of the first principal minor equal to 0, or None."""
    for choice in product(*(range(d) for d in A.dims)):
        m = submatrix(A, choice)
        for idx, minor in principal_minors(m):
            if minor == 0:
                return choice, idx
    return None


def _vertex_columns(A: VectorMatrix, vertex: Sequence[int]) -> list[int]:
    """Column bitmasks (bit ``r`` = row ``r``) of the vertex matrix."""
    cols = [1 << c for c in range(A.n)]
    offsets, masks = A._offsets, A._row_masks
    for i, v in enumerate(vertex):
        if v:
            cols[offsets[i] + v - 1] = masks[i]
    return cols


def vertex_matrix(A: VectorMatrix, vertex: Sequence[int]) -> Gf2Matrix:
    """Matrix of characteristic vectors of the ``n`` facets meeting at a vertex.

    ``vertex[i]`` in ``0..n_i`` names the facet of block ``i`` *not* containing
    the vertex.  Start from the identity (columns = ``e_(i,l)``); for each block
    with ``vertex[i] = c >= 1`` the facet ``F^i_c`` is absent and ``F^i_0`` is
    present, so column ``(i, c)`` is replaced by row ``i`` of ``A``.
    """
    n = A.n
    cols = _vertex_columns(A, vertex)
    rows = tuple(
        sum(1 << c for c, colmask in enumerate(cols) if (colmask >> r) & 1) for r in range(n)
    )
    return Gf2Matrix(n, n, rows)


@lru_cache(maxsize=None)
def _subsets(k: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Non-empty subsets of ``range(k)`` as ``(mask, members)``."""
    return tuple(
        (mask, tuple(p for p in range(k) if (mask >> p) & 1)) for mask in range(1, 1 << k)
    )


def _minors_all_one(A: VectorMatrix) -> bool:
    subsets = _subsets(A.k)
    for choice in product(*(range(d) for d in A.dims)):
        cols = [A.col(i, c) for i, c in enumerate(choice)]
        rows = [sum(A.rows[p][c] << i for i, c in enumerate(cols)) for p in range(A.k)]
        for mask, members in subsets:
            if not masks_independent(rows[p] & mask for p in members):
                return False
    return True


def validate(A: VectorMatrix, method: str = "minors") -> bool:
    """Whether ``A`` defines a small cover.

    ``method="minors"``: every principal minor of every column-choice
    submatrix is 1.  ``method="vertices"``: at every vertex of the polytope the
    characteristic vectors of the incident facets form a basis.
    """
    if method == "minors":
        return _minors_all_one(A)
    if method == "vertices":
        # det(M) = det(M^T), so the columns serve as rows
        return all(
            masks_independent(_vertex_columns(A, vertex))
            for vertex in product(*(range(d + 1) for d in A.dims))
        )
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Block orderings
# ---------------------------------------------------------------------------


def _dependencies(A: VectorMatrix) -> list[set[int]]:
    """succ[j] = blocks that must come after j (row j has a nonzero block i)."""
    succ = [set() for _ in range(A.k)]
    for j in range(A.k):
        for i in range(A.k):
            if i != j and any(A.block(j, i)):
                succ[j].add(i)
    return succ


def _topo_order(A: VectorMatrix, priority) -> list[int] | None:
    succ = _dependencies(A)
    indeg = [0] * A.k
    for j in range(A.k):
        for i in succ[j]:
            indeg[i] += 1
    heap = [(priority(j), j) for j in range(A.k) if indeg[j] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, j = heapq.heappop(heap)
        order.append(j)
        for i in sorted(succ[j]):
            indeg[i] -= 1
            if indeg[i] == 0:
                heapq.heappush(heap, (priority(i), i))
    return order if len(order) == A.k else None


def normalize(A: VectorMatrix) -> tuple[tuple[int, ...], VectorMatrix]:
    """Conjugate ``A`` by a block permutation into unipotent upper-triangular form.

    Returns ``(perm, E A E^-1)`` where new block ``t`` is old block ``perm[t]``.
    Ties in the topological sort go to the smaller original index.
    """
    order = _topo_order(A, priority=lambda j: j)
    if order is None:
        raise NotTriangulable("block dependency relation has a cycle")
    out = A.conjugate(order)
    if not out.is_upper_unipotent():
        raise NotTriangulable("a diagonal block is not all ones")
    return tuple(order), out


def remark_l_order(A: VectorMatrix) -> tuple[int, ...] | None:
    """Block order keeping ``A`` triangular with every ``n_i >= 2`` block first.

    Kahn's algorithm preferring available blocks with ``n_i >= 2``.  The greedy
    choice is exact: it only gets stuck when some block with ``n_i = 1`` must
    precede a block with ``n_i >= 2``, in which case no such order exists.
    """
    A.require_normalized()
    order = _topo_order(A, priority=lambda j: (A.dims[j] < 2, j))
    assert order is not None
    seen_small = False
    for j in order:
        if A.dims[j] < 2:
            seen_small = True
        elif seen_small:
            return None
    return tuple(order)


@dataclass(frozen=True)
class TowerStage:
    index: int
    fiber_dim: int
    classes: tuple[tuple[int, ...], ...]


def tower_decomposition(A: VectorMatrix) -> list[TowerStage]:
    """Projective-bundle tower of ``A``.

    Stage ``j`` is ``P(1 + L_1 + ... + L_{n_j})`` over stage ``j-1``; the first
    Stiefel-Whitney class of ``L_l`` in the basis ``z_1..z_{j-1}`` is
    ``(a(0, j, l), ..., a(j-1, j, l))``.
    """
    A.require_normalized()
    stages = []
    for j in range(A.k):
        classes = tuple(
            tuple(A.a(p, j, l) for p in range(j)) for l in range(A.dims[j])
        )
        stages.append(TowerStage(j, A.dims[j], classes))
    return stages
