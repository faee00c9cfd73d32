"""Fundamental group via the right-angled Coxeter group of the fan.

Coxeter letters are pairs ``(i, l)`` (block ``i``, facet ``l`` in
``0..n_i``), zero-based.  Words in the generators ``alpha_1..alpha_k`` of the
fundamental group are tuples of signed 1-based indices, so ``(1, -2)`` is
``alpha_1 alpha_2^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linalg import smith_normal_form
from .model import VectorMatrix

Letter = tuple[int, int]
CoxeterWord = tuple[Letter, ...]
GroupWord = tuple[int, ...]


class OracleMismatch(AssertionError):
    """Two independent computations of the same invariant disagree."""


# ---------------------------------------------------------------------------
# Coxeter group W
# ---------------------------------------------------------------------------


def commutes(dims: Sequence[int], x: Letter, y: Letter) -> bool:
    """Distinct letters fail to commute only inside a block of size 1."""
    return x == y or x[0] != y[0] or dims[x[0]] >= 2


def commutation_graph(dims: Sequence[int]) -> set[frozenset]:
    """Non-commuting pairs of distinct letters."""
    return {
        frozenset({(i, 0), (i, 1)}) for i, d in enumerate(dims) if d == 1
    }


def racg_free_reduce(word: Sequence[Letter], dims: Sequence[int]) -> list[Letter]:
    """Some reduced word for the element, built letter by letter.

    Appending ``x`` to a reduced word either lengthens it or cancels the last
    occurrence of ``x`` that can be shuffled to the end.
    """
    out: list[Letter] = []
    for x in word:
        for pos in range(len(out) - 1, -1, -1):
            y = out[pos]
            if y == x:
                del out[pos]
                break
            if not commutes(dims, x, y):
                out.append(x)
                break
        else:
            out.append(x)
    return out


def racg_reduce(word: Sequence[Letter], dims: Sequence[int]) -> CoxeterWord:
    """Unique normal form: the lexicographically least reduced word."""
    rest = racg_free_reduce(word, dims)
    out = []
    while rest:
        best = None
        for pos, x in enumerate(rest):
            if all(commutes(dims, x, y) and y != x for y in rest[:pos]):
                if best is None or x < rest[best]:
                    best = pos
        out.append(rest.pop(best))
    return tuple(out)


def block_projection_trivial(word: Sequence[Letter], dims: Sequence[int]) -> bool:
    """Triviality in W using ``W = prod Z2^{n_i+1} x prod D_inf``.

    Each block is handled separately: an even count of every letter for a
    block with ``n_i >= 2``, free cancellation in ``Z2 * Z2`` otherwise.
    """
    for i, d in enumerate(dims):
        letters = [x for x in word if x[0] == i]
        if d >= 2:
            if any(letters.count((i, l)) % 2 for l in range(d + 1)):
                return False
        else:
            stack: list[Letter] = []
            for x in letters:
                if stack and stack[-1] == x:
                    stack.pop()
                else:
                    stack.append(x)
            if stack:
                return False
    return True


# ---------------------------------------------------------------------------
# Generators and relators of the fundamental group
# ---------------------------------------------------------------------------


def alpha_words(A: VectorMatrix) -> list[CoxeterWord]:
    """``alpha_j = s_(j,0)`` followed by ``s_(i,l)`` for each 1 in row ``j``."""
    A.require_normalized()
    words = []
    for j in range(A.k):
        w = [(j, 0)]
        for i in range(A.k):
            for l in range(A.dims[i]):
                if A.a(j, i, l):
                    w.append((i, l + 1))
        words.append(tuple(w))
    return words


def lambda_image(word: Sequence[Letter], A: VectorMatrix) -> tuple[int, ...]:
    """Image in ``Z2^n``: ``s_(i,l) -> e_(i,l)`` for ``l >= 1``, ``s_(i,0) -> row i``."""
    v = [0] * A.n
    for i, l in word:
        if l == 0:
            for c, bit in enumerate(A.rows[i]):
                v[c] ^= bit
        else:
            v[A.col(i, l - 1)] ^= 1
    return tuple(v)


def expand(word: GroupWord, alphas: Sequence[CoxeterWord]) -> CoxeterWord:
    """Spell a word in the ``alpha_j`` with Coxeter letters."""
    out: list[Letter] = []
    for g in word:
        w = alphas[abs(g) - 1]
        out.extend(w if g > 0 else reversed(w))
    return tuple(out)


def relators(A: VectorMatrix) -> list[GroupWord]:
    """Relators of the fundamental group in the generators ``alpha_j``.

    ``alpha_p^2`` for every block with ``n_p >= 2``; for each ``p < q`` the
    word ``alpha_p^e1 alpha_q^e2 alpha_p^e3 alpha_q^e4`` with ``e1 = +1``,
    ``e2 = -1`` iff ``n_q = 1`` and ``a(p,q,0) = 1``, ``e3 = -1`` iff
    ``n_p = 1``, ``e4 = -1`` iff ``n_q = 1``.
    """
    A.require_normalized()
    out: list[GroupWord] = []
    for p in range(A.k):
        if A.dims[p] >= 2:
            out.append((p + 1, p + 1))
    for p in range(A.k):
        for q in range(p + 1, A.k):
            e2 = -1 if A.dims[q] == 1 and A.a(p, q, 0) else 1
            e3 = -1 if A.dims[p] == 1 else 1
            e4 = -1 if A.dims[q] == 1 else 1
            out.append((p + 1, e2 * (q + 1), e3 * (p + 1), e4 * (q + 1)))
    return out


def verify_relators(A: VectorMatrix) -> list[GroupWord]:
    """Relators that do *not* reduce to the identity in W (expected empty)."""
    alphas = alpha_words(A)
    return [r for r in relators(A) if racg_reduce(expand(r, alphas), A.dims)]


def is_abelian(A: VectorMatrix) -> bool:
    """``a(p,q,0) = 0`` for every ``p < q`` with ``n_q = 1``."""
    A.require_normalized()
    return not any(
        A.a(p, q, 0) for q in range(A.k) if A.dims[q] == 1 for p in range(q)
    )


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = (["Z^%d" % self.free_rank] if self.free_rank else []) + [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def h1_closed(A: VectorMatrix) -> AbelianInvariants:
    """``Z^(k-l-r) + Z2^(l+r)``.

    ``l`` counts blocks with ``n_i >= 2``; ``r`` counts blocks ``q`` with
    ``n_q = 1`` and some ``p < q`` with ``a(p,q,0) = 1``.
    """
    A.require_normalized()
    l = sum(d >= 2 for d in A.dims)
    r = sum(
        1 for q in range(A.k)
        if A.dims[q] == 1 and any(A.a(p, q, 0) for p in range(q))
    )
    return AbelianInvariants(A.k - l - r, (2,) * (l + r))


def abelianized_relators(A: VectorMatrix) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    rows = []
    for rel in relators(A):
        row = [0] * A.k
        for g in rel:
            row[abs(g) - 1] += 1 if g > 0 else -1
        rows.append(row)
    return rows


def h1_snf(A: VectorMatrix) -> AbelianInvariants:
    rows = abelianized_relators(A)
    factors = smith_normal_form(rows) if rows else []
    return AbelianInvariants(A.k - len(factors), tuple(d for d in factors if d > 1))


def h1(A: VectorMatrix) -> AbelianInvariants:
    """First integral homology; the closed form is checked against Smith normal form."""
    closed, oracle = h1_closed(A), h1_snf(A)
    if closed != oracle:
        raise OracleMismatch(f"H1 closed form {closed} != Smith normal form {oracle}")
    return closed


@dataclass(frozen=True)
class Presentation:
    generators: int
    relators: tuple[GroupWord, ...]
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "relators": [list(r) for r in self.relators],
            "flags": dict(self.flags),
        }


def group_properties(A: VectorMatrix) -> dict:
    real_bott = A.is_real_bott()
    abelian = is_abelian(A)
    return {
        "abelian": abelian,
        "aspherical": real_bott,
        "nilpotent": abelian,
        "solvable": True,
        "torsion_free": real_bott,
    }


def presentation(A: VectorMatrix) -> Presentation:
    return Presentation(A.k, tuple(relators(A)), group_properties(A))


def higher_homotopy_factors(dims: Sequence[int], j: int) -> list[str]:
    """Nontrivial factors of ``pi_j`` for ``j >= 2``."""
    if j < 2:
        raise ValueError("higher homotopy groups start at j = 2")
    out = []
    for d in dims:
        if d < 2 or j < d:
            continue
        out.append("Z" if j == d else f"pi_{j}(S^{d})")
    return out


def higher_homotopy(dims: Sequence[int], j: int) -> str:
    """``pi_j`` as a product of ``pi_j(RP^{n_i}) = pi_j(S^{n_i})``, symbolically."""
    return " x ".join(higher_homotopy_factors(dims, j)) or "0"
