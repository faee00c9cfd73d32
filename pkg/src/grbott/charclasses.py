"""Stiefel-Whitney classes, orientability and spin.

The total class is computed two ways in the cohomology ring (one product of
all ``n + k`` linear factors, and stage by stage up the tower) and the first
two classes also by closed formulas in the matrix entries.  The ring
expansion is the reference; the closed formulas are checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .cohomology import CohomologyRing, RingElement, build_ring
from .model import VectorMatrix, remark_l_order


class NotOrientable(ValueError):
    """Spin structures are only defined on orientable manifolds."""


class NotRealBott(ValueError):
    pass


@dataclass(frozen=True)
class SWClass:
    ring: CohomologyRing
    total: RingElement

    @property
    def top_degree(self) -> int:
        return sum(self.ring.dims)

    def component(self, d: int) -> RingElement:
        return self.total.component(d)

    @property
    def components(self) -> list[RingElement]:
        return [self.component(d) for d in range(self.top_degree + 1)]

    @property
    def w1(self) -> RingElement:
        return self.component(1)

    @property
    def w2(self) -> RingElement:
        return self.component(2)

    def to_json(self) -> list[list[list[int]]]:
        return [c.to_json() for c in self.components]


def _factor_coeffs(A: VectorMatrix):
    """Coefficient vectors of the linear forms ``z_i`` and ``x_(i,l)``."""
    for i in range(A.k):
        yield tuple(int(j == i) for j in range(A.k))
        for l in range(A.dims[i]):
            yield tuple(A.a(j, i, l) for j in range(A.k))


def _expand(ring: CohomologyRing, mask: int, coeff_vectors, keep: int) -> int:
    for c in coeff_vectors:
        mask ^= ring.mul_linear_mask(mask, c)
        mask &= keep
    return mask


def total_sw(A: VectorMatrix, ring: CohomologyRing | None = None,
             max_degree: int | None = None) -> SWClass:
    """``prod_i (1 + z_i) * prod_(i,l) (1 + x_(i,l))`` reduced in the ring.

    With ``max_degree`` the expansion drops everything above that degree,
    which is all the orientability and spin verdicts need.
    """
    ring = ring or build_ring(A)
    keep = ring.degree_mask(0, max_degree if max_degree is not None else A.n)
    mask = _expand(ring, 1, _factor_coeffs(A), keep)
    return SWClass(ring, RingElement(ring, mask))


def leading_stage(A: VectorMatrix, s: int) -> VectorMatrix:
    """Matrix of the ``s``-th tower stage: first ``s`` rows and blocks."""
    width = sum(A.dims[:s])
    return VectorMatrix(A.dims[:s], tuple(r[:width] for r in A.rows[:s]))


@lru_cache(maxsize=512)
def _stage_ring(stage: VectorMatrix) -> CohomologyRing:
    # consecutive census matrices share their leading stages
    return build_ring(stage)


def total_sw_recursive(A: VectorMatrix, ring: CohomologyRing | None = None) -> SWClass:
    """``w(B_s) = w(B_{s-1}) * prod_l (1 + x_(s,l)) * (1 + z_s)``, stage by stage.

    Each stage reduces in its own ring; classes from the previous stage are
    pulled back by padding exponents with zeros.
    """
    A.require_normalized()
    final_ring = ring
    prev_ring = None
    prev_mask = 1
    for s in range(1, A.k + 1):
        stage = leading_stage(A, s)
        if s < A.k:
            ring = _stage_ring(stage)
        else:
            ring = final_ring or build_ring(A)
        mask = 0
        if prev_ring is None:
            mask = 1
        else:
            for b in range(prev_ring.dim):
                if (prev_mask >> b) & 1:
                    mask ^= ring.normal_form(prev_ring.basis[b] + (0,))
        i = s - 1
        coeffs = [tuple(stage.a(j, i, l) for j in range(s)) for l in range(stage.dims[i])]
        coeffs.append(tuple(int(j == i) for j in range(s)))
        mask = _expand(ring, mask, coeffs, ring.degree_mask(0, stage.n))
        prev_ring, prev_mask = ring, mask
    return SWClass(prev_ring, RingElement(prev_ring, prev_mask))


# ---------------------------------------------------------------------------
# Closed formulas
# ---------------------------------------------------------------------------


def w1_closed(A: VectorMatrix, ring: CohomologyRing | None = None) -> RingElement:
    """``sum_j (1 + sum_(i,l) a(j,i,l)) z_j``."""
    ring = ring or build_ring(A)
    return ring.linear([(1 + A.row_sum(j)) % 2 for j in range(A.k)])


def is_orientable(A: VectorMatrix) -> bool:
    """Every row of ``A`` has odd sum."""
    return all(A.row_sum(j) % 2 == 1 for j in range(A.k))


@dataclass(frozen=True)
class SpinTerms:
    """Mod-2 sums entering the second Stiefel-Whitney class.

    ``T[s]``: pairs of ones within row ``s``.  ``T_pair[(r, s)]``: positions
    where rows ``r`` and ``s`` are both 1.  ``T_prime`` and ``T_prime_pair``
    are the coefficients of ``z_s^2`` and ``z_r z_s`` in the unreduced
    degree-2 expansion; they equal ``1 + T[s]`` and ``T_pair[(r, s)]`` when
    ``A`` is orientable.  ``mixed[(r, s)]`` (``n_s = 1``) is
    ``T_pair + a(r,s,0) * (1 + T[s])``.
    """

    T: tuple[int, ...]
    T_pair: dict = field(default_factory=dict)
    T_prime: tuple[int, ...] = ()
    T_prime_pair: dict = field(default_factory=dict)
    mixed: dict = field(default_factory=dict)


def spin_terms(A: VectorMatrix) -> SpinTerms:
    A.require_normalized()
    k = A.k
    masks = [A.row_mask(j) for j in range(k)]
    ones = [bin(m).count("1") for m in masks]
    # pairs inside one block plus pairs across blocks = all pairs of ones in the row
    T = tuple(comb(m, 2) % 2 for m in ones)
    T_prime = tuple((m + comb(m, 2)) % 2 for m in ones)
    T_pair, T_prime_pair, mixed = {}, {}, {}
    for s in range(k):
        for r in range(s):
            same = bin(masks[r] & masks[s]).count("1")
            T_pair[(r, s)] = same % 2
            # ordered pairs of distinct positions, one 1 from each row
            distinct = ones[r] * ones[s] - same
            T_prime_pair[(r, s)] = (1 + ones[r] + ones[s] + distinct) % 2
            if A.dims[s] == 1:
                mixed[(r, s)] = (T_pair[(r, s)] + A.a(r, s, 0) * (1 + T[s])) % 2
    return SpinTerms(T, T_pair, T_prime, T_prime_pair, mixed)


def _square(ring: CohomologyRing, s: int) -> RingElement:
    return ring.monomial(tuple(2 * (j == s) for j in range(ring.k)))


def _pair(ring: CohomologyRing, r: int, s: int) -> RingElement:
    return ring.monomial(tuple(int(j in (r, s)) for j in range(ring.k)))


def w2_closed(A: VectorMatrix, ring: CohomologyRing | None = None,
              simplified: bool = False) -> RingElement:
    """Second Stiefel-Whitney class from the matrix entries.

    ``z_s^2`` with ``n_s = 1`` is rewritten as ``sum_{j<s} a(j,s,0) z_j z_s``,
    leaving only basis monomials.  Blocks are classified by ``n_s`` rather
    than position, so no particular block order is assumed.  With
    ``simplified=True`` the orientable form (``1 + T_s`` and ``T_rs``) is
    used; it raises :class:`NotOrientable` otherwise.
    """
    ring = ring or build_ring(A)
    t = spin_terms(A)
    if simplified:
        if not is_orientable(A):
            raise NotOrientable("simplified w2 formula needs an orientable manifold")
        sq = [(1 + x) % 2 for x in t.T]
        pr = t.T_pair
    else:
        sq = list(t.T_prime)
        pr = t.T_prime_pair
    out = ring.zero()
    for s in range(A.k):
        if A.dims[s] >= 2 and sq[s]:
            out = out + _square(ring, s)
        for r in range(s):
            c = pr[(r, s)]
            if A.dims[s] == 1:
                c = (c + A.a(r, s, 0) * sq[s]) % 2
            if c:
                out = out + _pair(ring, r, s)
    return out


def spin_conditions(A: VectorMatrix) -> bool:
    """The three families of identities for an orientable normalized ``A``."""
    t = spin_terms(A)
    for s in range(A.k):
        if A.dims[s] >= 2:
            if t.T[s] != 1:
                return False
            if any(t.T_pair[(r, s)] for r in range(s)):
                return False
        elif any(t.mixed[(r, s)] for r in range(s)):
            return False
    return True


def is_spin(A: VectorMatrix, method: str = "auto") -> bool:
    """Spin verdict for an orientable normalized ``A``.

    ``"closed"`` checks the identities on ``T``; ``"ring"`` tests ``w2 = 0``
    in the ring.  ``"auto"`` uses the identities when the blocks can be
    ordered with every ``n_i >= 2`` block first, and the ring otherwise.
    """
    A.require_normalized()
    if not is_orientable(A):
        raise NotOrientable("spin is undefined for a non-orientable manifold")
    if method == "auto":
        order = remark_l_order(A)
        if order is None:
            method = "ring"
        else:
            return spin_conditions(A.conjugate(order))
    if method == "closed":
        return spin_conditions(A)
    if method == "ring":
        return not total_sw(A, max_degree=2).w2
    raise ValueError(f"unknown method {method!r}")


def real_bott_spin_C(A: VectorMatrix, form: str = "stated") -> bool:
    """Spin test for real Bott manifolds in terms of ``C = A - I``.

    ``form="stated"``: spin iff for all ``r < s``
    ``sum_p c[r][p] c[s][p] + c[r][s] * sum_{p<q} c[r][p] c[s][q]`` is even.
    This disagrees with ``w2 = 0`` on some inputs from ``k = 4`` on.
    ``form="derived"`` uses ``c[s][p] c[s][q]`` in the second sum, which is
    ``T_s`` of row ``s``; that version agrees with the ring everywhere tested.
    """
    if form not in ("stated", "derived"):
        raise ValueError(f"unknown form {form!r}")
    if not A.is_real_bott():
        raise NotRealBott("all blocks must have size 1")
    A.require_normalized()
    if not is_orientable(A):
        raise NotOrientable("spin is undefined for a non-orientable manifold")
    k = A.k
    c = [[A.rows[i][j] ^ (i == j) for j in range(k)] for i in range(k)]
    for s in range(k):
        left = c[s]
        for r in range(s):
            right = c[r] if form == "stated" else c[s]
            lhs = sum(c[r][p] * c[s][p] for p in range(k))
            lhs += c[r][s] * sum(right[p] * left[q] for p in range(k) for q in range(p + 1, k))
            if lhs % 2:
                return False
    return True


def top_class_coefficient(sw: SWClass) -> int:
    """Coefficient of ``prod z_i^{n_i}`` in the total class."""
    top = sw.ring.basis.index(tuple(sw.ring.dims))
    return (sw.total.mask >> top) & 1
