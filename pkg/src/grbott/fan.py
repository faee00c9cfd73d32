"""The fan of the real toric variety: rays, maximal cones, smoothness, flagness."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .linalg import int_det
from .model import VectorMatrix


@dataclass(frozen=True)
class Fan:
    """Rays indexed by ``(i, l)``, ``0 <= l <= n_i``; cones as bitmasks over ``rays``."""

    labels: tuple[tuple[int, int], ...]
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[int, ...]

    def cone_rays(self, cone: int) -> list[tuple[int, ...]]:
        return [self.rays[t] for t in range(len(self.rays)) if (cone >> t) & 1]

    def is_face(self, subset: int) -> bool:
        return any(subset & cone == subset for cone in self.maximal_cones)


def build_fan(A: VectorMatrix) -> Fan:
    """``u_(i,l) = e_(i,l)`` for ``l >= 1`` and ``u_(i,0) = -(row i of A)``.

    Maximal cones omit exactly one ray from each block.
    """
    n = A.n
    labels, rays = [], []
    block_bits = []
    for i, d in enumerate(A.dims):
        bits = 0
        for l in range(d + 1):
            labels.append((i, l))
            if l == 0:
                rays.append(tuple(-v for v in A.rows[i]))
            else:
                rays.append(tuple(int(c == A.col(i, l - 1)) for c in range(n)))
            bits |= 1 << (len(rays) - 1)
        block_bits.append(bits)
    full = (1 << len(rays)) - 1
    starts = [labels.index((i, 0)) for i in range(A.k)]
    cones = []
    for omit in product(*(range(d + 1) for d in A.dims)):
        mask = full
        for i, l in enumerate(omit):
            mask &= ~(1 << (starts[i] + l))
        cones.append(mask)
    return Fan(tuple(labels), tuple(rays), tuple(cones))


def cone_determinants(f: Fan) -> list[int]:
    return [int_det(f.cone_rays(c)) for c in f.maximal_cones]


def is_smooth(f: Fan) -> bool:
    """Every maximal cone is spanned by a lattice basis."""
    return all(abs(d) == 1 for d in cone_determinants(f))


def minimal_non_faces(f: Fan, max_size: int | None = None) -> list[int]:
    """Minimal non-faces of the simplicial complex of the fan, by subset search.

    Subsets are searched up to ``max_size`` rays, by default the size of the
    largest block of rays, ``max(n_i) + 1``: minimal non-faces of a join of
    simplex boundaries are whole blocks, so the bound is tight.
    """
    m = len(f.rays)
    if max_size is None:
        blocks = [i for i, _ in f.labels]
        max_size = max(blocks.count(i) for i in set(blocks))
    out = []
    for size in range(1, max_size + 1):
        for combo in combinations(range(m), size):
            s = 0
            for t in combo:
                s |= 1 << t
            if f.is_face(s):
                continue
            if all(f.is_face(s & ~(1 << t)) for t in combo):
                out.append(s)
    return out


def is_flag(f: Fan) -> bool:
    """Every minimal non-face has exactly two rays."""
    return all(bin(s).count("1") == 2 for s in minimal_non_faces(f))
