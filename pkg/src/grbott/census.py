"""Exhaustive enumeration and classification for a fixed dimension vector."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .charclasses import is_orientable, is_spin
from .fungroup import is_abelian
from .model import VectorMatrix
from .report import Report, build_report

SUMMARY_FIELDS = ("total", "orientable", "spin", "abelian", "aspherical")


def _free_slots(dims: Sequence[int]) -> list[tuple[int, int]]:
    k = len(dims)
    return [(j, i) for j in range(k) for i in range(j + 1, k)]


def free_bit_count(dims: Sequence[int]) -> int:
    return sum(dims[i] for _, i in _free_slots(dims))


def matrix_from_bits(dims: Sequence[int], bits: Sequence[int]) -> VectorMatrix:
    """Unipotent matrix whose strictly-upper blocks are filled row by row from ``bits``."""
    it = iter(bits)
    upper = {(j, i): [next(it) for _ in range(dims[i])] for j, i in _free_slots(dims)}
    return VectorMatrix.unipotent(tuple(dims), upper)


def enumerate_matrices(dims: Sequence[int], start: int = 0, stop: int | None = None) -> Iterator[VectorMatrix]:
    """All unipotent upper-triangular matrices for ``dims`` in lexicographic bit order.

    ``start``/``stop`` select a slice of the ``2^m`` matrices, for chunked
    parallel runs.
    """
    dims = tuple(dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"dims must be positive, got {dims}")
    m = free_bit_count(dims)
    stop = 2 ** m if stop is None else stop
    for idx in range(start, stop):
        bits = [(idx >> (m - 1 - b)) & 1 for b in range(m)]
        yield matrix_from_bits(dims, bits)


def canonical_form(A: VectorMatrix) -> VectorMatrix:
    """Least ``(dims, rows)`` among upper-triangular block-permutation conjugates."""
    best = None
    for perm in permutations(range(A.k)):
        C = A.conjugate(perm)
        if C.is_upper_unipotent():
            key = (C.dims, C.rows)
            if best is None or key < (best.dims, best.rows):
                best = C
    if best is None:
        raise ValueError("matrix has no upper-triangular conjugate")
    return best


def canonical_key(A: VectorMatrix) -> str:
    return canonical_form(A).dumps()


@dataclass
class CensusRecord:
    matrix: VectorMatrix
    report: Report
    canonical_key: str

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "report": self.report.to_json(),
            "canonical_key": self.canonical_key,
        }


def classify_one(A: VectorMatrix) -> Counter:
    c = Counter(total=1)
    orientable = is_orientable(A)
    c["orientable"] += orientable
    c["spin"] += orientable and is_spin(A)
    c["abelian"] += is_abelian(A)
    c["aspherical"] += A.is_real_bott()
    return c


def _classify_chunk(args) -> tuple[Counter, dict]:
    dims, start, stop, dedupe = args
    counts: Counter = Counter()
    seen: dict[str, Counter] = {}
    for A in enumerate_matrices(dims, start, stop):
        c = classify_one(A)
        if dedupe:
            seen.setdefault(canonical_key(A), c)
        else:
            counts.update(c)
    return counts, seen


def classify(dims: Sequence[int], dedupe: bool = False, workers: int = 1,
             chunk: int = 4096) -> dict:
    """Counts of total / orientable / spin / abelian / aspherical manifolds.

    ``dedupe=False`` counts raw matrices.  ``dedupe=True`` counts orbits under
    block-permutation conjugation (one representative per canonical form).
    Chunks merge commutatively, so the result does not depend on ``workers``.
    """
    dims = tuple(dims)
    total = 2 ** free_bit_count(dims)
    jobs = [(dims, s, min(s + chunk, total), dedupe) for s in range(0, total, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_classify_chunk, jobs))
    else:
        results = [_classify_chunk(j) for j in jobs]
    counts: Counter = Counter()
    merged: dict[str, Counter] = {}
    for c, seen in results:
        counts.update(c)
        for key, v in seen.items():
            merged.setdefault(key, v)
    if dedupe:
        for v in merged.values():
            counts.update(v)
    summary = {"dims": list(dims), "mode": "orbits" if dedupe else "raw"}
    summary.update({f: counts.get(f, 0) for f in SUMMARY_FIELDS})
    return summary


def census_records(dims: Sequence[int], dedupe: bool = False) -> Iterator[CensusRecord]:
    seen = set()
    for A in enumerate_matrices(dims):
        key = canonical_key(A)
        if dedupe:
            if key in seen:
                continue
            seen.add(key)
        yield CensusRecord(A, build_report(A), key)


def census_lines(dims: Sequence[int], dedupe: bool = False) -> Iterator[str]:
    """JSON lines: one record per matrix, then ``{"summary": ...}``."""
    for rec in census_records(dims, dedupe):
        yield json.dumps(rec.to_json(), sort_keys=True)
    yield json.dumps({"summary": classify(dims, dedupe)}, sort_keys=True)
