"""Mod-2 cohomology ring of a generalized real Bott manifold.

For a unipotent upper-triangular vector matrix the ring is
``Z2[z_1..z_k] / (R_1, ..., R_k)`` with

    R_i = z_i * prod_l (z_i + sum_{j<i} a(j, i, l) z_j),

whose leading monomial under lex order (``z_k > ... > z_1``) is
``z_i^(n_i+1)``.  The heads are powers of distinct variables, so the rules
form a Groebner basis and normal forms are unique; a basis of the ring is the
set of monomials with ``e_i <= n_i``.

Ring elements are bitmasks over that basis (bit ``b`` <-> ``ring.basis[b]``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .linalg import gf2_rank_of_masks
from .model import VectorMatrix

Exponents = tuple[int, ...]


def _poly_mul(p: set, q: set) -> set:
    out: set = set()
    for a in p:
        for b in q:
            m = tuple(x + y for x, y in zip(a, b))
            if m in out:
                out.remove(m)
            else:
                out.add(m)
    return out


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class RingMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _layout(dims: tuple[int, ...]):
    """Basis data that depends only on the dimension vector.

    Basis index of ``e`` is mixed radix with block 0 fastest.  ``low[i]`` marks
    basis elements with ``e_i < n_i``.
    """
    strides, acc = [], 1
    for d in dims:
        strides.append(acc)
        acc *= d + 1
    basis = [None] * acc
    for e in product(*(range(d + 1) for d in dims)):
        basis[sum(x * s for x, s in zip(e, strides))] = e
    low = []
    for i, d in enumerate(dims):
        mask = 0
        for b, e in enumerate(basis):
            if e[i] < d:
                mask |= 1 << b
        low.append(mask)
    index = {e: b for b, e in enumerate(basis)}
    return tuple(strides), tuple(basis), tuple(sum(e) for e in basis), index, tuple(low)


@lru_cache(maxsize=None)
def _unit(k: int, i: int, power: int) -> Exponents:
    return tuple(power if j == i else 0 for j in range(k))


class CohomologyRing:
    """The quotient ring for a normalized :class:`VectorMatrix`."""

    def __init__(self, A: VectorMatrix):
        A.require_normalized()
        self.matrix = A
        self.dims = A.dims
        self.k = A.k
        self._strides, basis, degrees, self._indices, self._low = _layout(A.dims)
        self.dim = len(basis)
        self.basis: list[Exponents] = list(basis)
        self.degrees = list(degrees)
        self.relations = [self._relation(i) for i in range(self.k)]
        self.tails = []
        for i, rel in enumerate(self.relations):
            head = self._unit(i, self.dims[i] + 1)
            assert head in rel and max(rel, key=lambda e: e[::-1]) == head
            self.tails.append(tuple(sorted(rel - {head})))
        self._nf: dict[Exponents, int] = {}

    # -- construction -----------------------------------------------------

    def _unit(self, i: int, power: int = 1) -> Exponents:
        return _unit(self.k, i, power)

    def _relation(self, i: int) -> set:
        """Polynomial ``R_i`` as a set of exponent tuples."""
        poly = {self._unit(i)}
        for l in range(self.dims[i]):
            factor = {self._unit(j) for j in range(i + 1) if self.matrix.a(j, i, l)}
            poly = _poly_mul(poly, factor)
        return poly

    def _index(self, e: Sequence[int]) -> int:
        return self._indices[tuple(e)]

    @property
    def rules(self) -> list[tuple[Exponents, tuple[Exponents, ...]]]:
        """Rewrite rules ``z_i^(n_i+1) -> tail``."""
        return [(self._unit(i, self.dims[i] + 1), self.tails[i]) for i in range(self.k)]

    # -- normal forms -------------------------------------------------------

    def normal_form(self, e: Exponents) -> int:
        """Normal form of a single monomial, as a basis bitmask."""
        b = self._indices.get(e)
        if b is not None:
            return 1 << b
        cached = self._nf.get(e)
        if cached is not None:
            return cached
        # rewrite with the largest variable that overflows
        i = next(i for i in range(self.k - 1, -1, -1) if e[i] > self.dims[i])
        rest = list(e)
        rest[i] -= self.dims[i] + 1
        out = 0
        for t in self.tails[i]:
            out ^= self.normal_form(tuple(x + y for x, y in zip(rest, t)))
        self._nf[e] = out
        return out

    def reduce(self, poly) -> "RingElement":
        """Normal form of a polynomial.

        ``poly`` is an iterable of exponent tuples (repeated monomials cancel
        in pairs) or a mapping ``{exponents: coefficient}``.
        """
        if isinstance(poly, RingElement):
            self._check(poly)
            return poly
        items = poly.items() if isinstance(poly, dict) else ((m, 1) for m in poly)
        mask = 0
        for m, c in items:
            m = tuple(m)
            if len(m) != self.k or any(x < 0 for x in m):
                raise ValueError(f"bad exponent vector {m}")
            if c % 2:
                mask ^= self.normal_form(m)
        return RingElement(self, mask)

    # -- elements -----------------------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, 0)

    def one(self) -> "RingElement":
        return RingElement(self, 1)

    def var(self, i: int) -> "RingElement":
        return RingElement(self, self.normal_form(self._unit(i)))

    def monomial(self, e: Sequence[int]) -> "RingElement":
        return RingElement(self, self.normal_form(tuple(e)))

    def linear(self, coeffs: Sequence[int]) -> "RingElement":
        mask = 0
        for i, c in enumerate(coeffs):
            if c % 2:
                mask ^= self.normal_form(self._unit(i))
        return RingElement(self, mask)

    def _check(self, x: "RingElement"):
        if x.ring is not self and x.ring.matrix != self.matrix:
            raise RingMismatch("elements belong to different rings")

    # -- arithmetic ---------------------------------------------------------

    def mul_var_mask(self, mask: int, i: int) -> int:
        """``z_i * mask``: a shift where no reduction happens, normal forms elsewhere."""
        low = self._low[i]
        out = (mask & low) << self._strides[i]
        for b in _iter_bits(mask & ~low):
            e = list(self.basis[b])
            e[i] += 1
            out ^= self.normal_form(tuple(e))
        return out

    def mul_linear_mask(self, mask: int, coeffs: Sequence[int]) -> int:
        """``(sum_i coeffs[i] z_i) * mask``."""
        out = 0
        for i, c in enumerate(coeffs):
            if c % 2:
                out ^= self.mul_var_mask(mask, i)
        return out

    def multiply(self, x: "RingElement", y: "RingElement") -> "RingElement":
        self._check(x)
        self._check(y)
        out = 0
        basis = self.basis
        for b in _iter_bits(x.mask):
            eb = basis[b]
            for c in _iter_bits(y.mask):
                out ^= self.normal_form(tuple(p + q for p, q in zip(eb, basis[c])))
        return RingElement(self, out)

    def degree_mask(self, lo: int, hi: int | None = None) -> int:
        hi = lo if hi is None else hi
        mask = 0
        for b, d in enumerate(self.degrees):
            if lo <= d <= hi:
                mask |= 1 << b
        return mask

    # -- Poincare polynomial -------------------------------------------------

    def betti(self) -> list[int]:
        """Betti numbers counted from the normal-form basis."""
        out = [0] * (sum(self.dims) + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    def betti_from_ideal(self) -> list[int]:
        """Betti numbers from GF(2) ranks of the ideal, degree by degree.

        Independent of the rewrite system: ``dim H^d = #monomials of degree d -
        rank(span{m * R_i : deg m = d - n_i - 1})``.
        """
        k = self.k
        out = []
        for d in range(sum(self.dims) + 2):
            monos = list(_monomials_of_degree(k, d))
            col = {m: c for c, m in enumerate(monos)}
            rows = []
            for i, rel in enumerate(self.relations):
                md = d - self.dims[i] - 1
                if md < 0:
                    continue
                for m in _monomials_of_degree(k, md):
                    mask = 0
                    for t in rel:
                        mask ^= 1 << col[tuple(x + y for x, y in zip(m, t))]
                    rows.append(mask)
            out.append(len(monos) - gf2_rank_of_masks(rows, len(monos)))
        assert out[-1] == 0, "ring has classes above the top degree"
        return out[:-1]


def _monomials_of_degree(k: int, d: int):
    if k == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _monomials_of_degree(k - 1, d - first):
            yield (first,) + rest


@dataclass(frozen=True, eq=False)
class RingElement:
    ring: CohomologyRing
    mask: int

    def __eq__(self, other):
        if isinstance(other, int) and other in (0, 1):
            return self.mask == other
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.mask == other.mask and (
            self.ring is other.ring or self.ring.matrix == other.ring.matrix
        )

    def __hash__(self):
        return hash((self.ring.matrix, self.mask))

    def __add__(self, other: "RingElement") -> "RingElement":
        if isinstance(other, int):
            other = self.ring.one() if other % 2 else self.ring.zero()
        self.ring._check(other)
        return RingElement(self.ring, self.mask ^ other.mask)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "RingElement") -> "RingElement":
        if isinstance(other, int):
            return self if other % 2 else self.ring.zero()
        return self.ring.multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RingElement":
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.mask)

    def monomials(self) -> list[Exponents]:
        """Exponent vectors of the terms, sorted."""
        return sorted(self.ring.basis[b] for b in _iter_bits(self.mask))

    def component(self, d: int) -> "RingElement":
        return RingElement(self.ring, self.mask & self.ring.degree_mask(d))

    def is_homogeneous(self, d: int) -> bool:
        return self.mask & ~self.ring.degree_mask(d) == 0

    def to_json(self) -> list[list[int]]:
        return [list(m) for m in self.monomials()]

    def __repr__(self):
        if not self.mask:
            return "0"
        terms = []
        for m in self.monomials():
            factors = [f"z{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
            terms.append("*".join(factors) or "1")
        return " + ".join(terms)


def build_ring(A: VectorMatrix) -> CohomologyRing:
    return CohomologyRing(A)


def reduce(ring: CohomologyRing, poly: Iterable) -> RingElement:
    return ring.reduce(poly)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    return x.ring.multiply(x, y)


def poincare_polynomial(ring: CohomologyRing, method: str = "ideal") -> list[int]:
    """Coefficients ``(b_0, ..., b_n)`` of the mod-2 Poincare polynomial.

    ``method="ideal"`` uses the rank computation (independent of the
    normal-form basis); ``"basis"`` counts basis monomials.
    """
    if method == "ideal":
        return ring.betti_from_ideal()
    if method == "basis":
        return ring.betti()
    raise ValueError(f"unknown method {method!r}")


def product_poincare(dims: Sequence[int]) -> list[int]:
    """Coefficients of ``prod_i (1 + t + ... + t^{n_i})``."""
    out = [1]
    for d in dims:
        new = [0] * (len(out) + d)
        for p, c in enumerate(out):
            for q in range(d + 1):
                new[p + q] += c
        out = new
    return out


def h2_basis_independent(ring: CohomologyRing) -> bool:
    """``z_s^2`` (``n_s >= 2``) and ``z_r z_s`` (``r < s``) are independent in H^2."""
    gens = []
    for s in range(ring.k):
        if ring.dims[s] >= 2:
            gens.append(ring.monomial(ring._unit(s, 2)).mask)
        for r in range(s):
            gens.append(ring.monomial(tuple((j in (r, s)) * 1 for j in range(ring.k))).mask)
    expected = comb(ring.k, 2) + sum(d >= 2 for d in ring.dims)
    return len(gens) == expected and gf2_rank_of_masks(gens, ring.dim) == expected
