"""Acceptance criteria 1-10, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also repeated in the terminal summary.
"""

import io
import json
import random
import time
from itertools import product
from math import prod

from hypothesis import given, settings, strategies as st

from conftest import ACCEPTANCE_LINES, admissible_up_to, dims_up_to, klein, scramble, unipotent_matrices
from grbott.census import canonical_form, enumerate_matrices
from grbott.charclasses import (
    is_orientable, is_spin, real_bott_spin_C, spin_terms, top_class_coefficient, total_sw,
    total_sw_recursive, w1_closed,
)
from grbott.cli import main
from grbott.cohomology import build_ring, poincare_polynomial, product_poincare, reduce
from grbott.digraph import build_digraph, orientable_via_digraph
from grbott.fungroup import (
    AbelianInvariants, alpha_words, expand, group_properties, h1, h1_closed, h1_snf,
    lambda_image, racg_reduce, relators,
)
from grbott.linalg import minors_gcd, smith_normal_form
from grbott.model import VectorMatrix, normalize, validate


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def census(dims):
    out = io.StringIO()
    start = time.perf_counter()
    code = main(["census", "--dims", ",".join(map(str, dims))], out=out)
    elapsed = time.perf_counter() - start
    assert code == 0
    lines = [json.loads(l) for l in out.getvalue().splitlines()]
    return lines[:-1], lines[-1]["summary"], elapsed


def free_bits(record):
    A = VectorMatrix.from_json(record["matrix"])
    return tuple(A.a(j, i, l) for j in range(A.k) for i in range(j + 1, A.k) for l in range(A.dims[i]))


def test_criterion_1_example_rp2_bundle_over_circle():
    records, summary, elapsed = census((2, 1))
    orientable = {free_bits(r) for r in records if r["report"]["orientable"]}
    spin = {free_bits(r) for r in records if r["report"]["spin"]}
    ok = summary["total"] == 2 and orientable == {(1,)} and spin == {(1,)} and elapsed < 1
    report(1, ok, f"dims (2,1): total {summary['total']}, orientable {sorted(orientable)}, "
                  f"spin {sorted(spin)}, {elapsed:.2f}s")


def test_criterion_2_example_rp2_bundle_over_rp2():
    records, summary, elapsed = census((2, 2))
    orientable = {free_bits(r) for r in records if r["report"]["orientable"]}
    witness = {}
    for r in records:
        A = VectorMatrix.from_json(r["matrix"])
        witness[free_bits(r)] = spin_terms(A).T_pair[(0, 1)]
    expected = {(1, 0), (0, 1)}
    ok = (summary["total"] == 4 and orientable == expected and summary["spin"] == 0
          and all(witness[b] == 1 for b in expected) and elapsed < 1)
    report(2, ok, f"dims (2,2): total {summary['total']}, orientable {sorted(orientable)} "
                  f"(expected {sorted(expected)}), spin {summary['spin']}, "
                  f"T12 on expected {[witness[b] for b in sorted(expected)]}, {elapsed:.2f}s")


def test_criterion_3_example_rp2_circle_circle():
    records, summary, elapsed = census((2, 1, 1))
    orientable = {free_bits(r) for r in records if r["report"]["orientable"]}
    expected = {(1, 0, 0), (0, 1, 0)}
    t1 = {free_bits(r): spin_terms(VectorMatrix.from_json(r["matrix"])).T[0]
          for r in records if free_bits(r) in expected}
    ok = (summary["total"] == 8 and orientable == expected and summary["spin"] == 0
          and all(v == 0 for v in t1.values()) and elapsed < 1)
    report(3, ok, f"dims (2,1,1): total {summary['total']}, orientable {sorted(orientable)}, "
                  f"spin {summary['spin']} (expected 0), T1 {[t1[b] for b in sorted(t1)]} "
                  f"(expected all 0), {elapsed:.2f}s")


def test_criterion_4_projective_spaces():
    bad = []
    for n in range(1, 9):
        A = VectorMatrix.unipotent((n,))
        ring = build_ring(A)
        orientable = is_orientable(A)
        if orientable != (n % 2 == 1):
            bad.append(f"n={n} orientable={orientable}")
        if orientable and is_spin(A) != (n % 4 == 3):
            bad.append(f"n={n} spin={is_spin(A)}")
        if total_sw(A, ring).total != (ring.one() + ring.var(0)) ** (n + 1):
            bad.append(f"n={n} total class")
    report(4, not bad, "RP^n, n <= 8: " + ("all as stated" if not bad else "; ".join(bad)))


def test_criterion_5_equivalence_suite():
    start = time.perf_counter()
    failures = {key: 0 for key in "abcdefg"}
    count = 0
    # (a) also over every GF(2) matrix, valid or not, where k * n <= 12
    for dims in dims_up_to(5):
        k, n = len(dims), sum(dims)
        if k * n > 12:
            continue
        for bits in product((0, 1), repeat=k * n):
            B = VectorMatrix(dims, tuple(bits[j * n:(j + 1) * n] for j in range(k)))
            failures["a"] += validate(B, "minors") != validate(B, "vertices")
    for dims in dims_up_to(6):
        size = prod(d + 1 for d in dims)
        expected_poincare = product_poincare(dims)
        for A in enumerate_matrices(dims):
            count += 1
            failures["a"] += not (validate(A, "minors") and validate(A, "vertices"))
            ring = build_ring(A)
            sw = total_sw(A, ring)
            failures["b"] += sw.total.mask != total_sw_recursive(A, ring).total.mask
            failures["c"] += w1_closed(A, ring) != sw.w1
            orientable = is_orientable(A)
            failures["d"] += not (orientable == (not sw.w1) == orientable_via_digraph(build_digraph(A)))
            if orientable:
                failures["e"] += is_spin(A) != (not sw.w2)
            failures["f"] += poincare_polynomial(ring, "basis") != expected_poincare
            failures["g"] += ring.dim != size
    # (f) with the ideal-rank route: exhaustive for n <= 4, sampled above
    rng = random.Random(5)
    pool = [A for A in admissible_up_to(6) if A.n > 4]
    checked = list(admissible_up_to(4)) + rng.sample(pool, 150)
    for A in checked:
        failures["f"] += poincare_polynomial(build_ring(A), "ideal") != product_poincare(A.dims)
    elapsed = time.perf_counter() - start
    ok = not any(failures.values())
    report(5, ok, f"{count} matrices, failures {failures}, "
                  f"ideal-rank Betti check on {len(checked)}, {elapsed:.1f}s (target 60s)")


def test_criterion_6_presentation_verification():
    failures, count = 0, 0
    for A in admissible_up_to(6):
        alphas = alpha_words(A)
        for r in relators(A):
            count += 1
            failures += racg_reduce(expand(r, alphas), A.dims) != ()
        failures += sum(any(lambda_image(w, A)) for w in alphas)
    report(6, failures == 0, f"{count} relators over {len(admissible_up_to(6))} matrices, "
                             f"{failures} failures")


def test_criterion_7_h1_agreement():
    failures = sum(h1_closed(A) != h1_snf(A) for A in admissible_up_to(6))
    kb = h1(klein())
    ok = failures == 0 and kb == AbelianInvariants(1, (2,))
    report(7, ok, f"{failures} disagreements; Klein bottle H1 = {kb}")


def test_criterion_8_real_bott_specialization():
    stated_bad, derived_bad, count = [], 0, 0
    for k in range(1, 6):
        for A in enumerate_matrices((1,) * k):
            if not is_orientable(A):
                continue
            count += 1
            truth = is_spin(A)
            if real_bott_spin_C(A) != truth:
                stated_bad.append(A)
            derived_bad += real_bott_spin_C(A, form="derived") != truth
    example = stated_bad[0].rows if stated_bad else None
    report(8, not stated_bad,
           f"{count} orientable real Bott matrices, k <= 5: stated formula disagrees on "
           f"{len(stated_bad)} (first {example}); derived form disagrees on {derived_bad}")


def invariants(A):
    ring = build_ring(A)
    orientable = is_orientable(A)
    return (orientable, is_spin(A) if orientable else None, ring.betti(), h1(A),
            group_properties(A))


def test_criterion_9_conjugation_invariance():
    rng = random.Random(9)
    profiles = [d for d in dims_up_to(6) if len(d) >= 2]
    failures, count = 0, 0
    for dims in profiles:
        pool = list(enumerate_matrices(dims))
        for _ in range(200):
            A = rng.choice(pool)
            _, N = normalize(scramble(A, rng))
            count += 1
            failures += invariants(N) != invariants(A)
    report(9, failures == 0, f"{count} scrambles over {len(profiles)} dims profiles, {failures} mismatches")


def _random_element(ring, rnd):
    return reduce(ring, [e for e in ring.basis if rnd.random() < 0.4])


@settings(max_examples=100, deadline=None, database=None)
@given(unipotent_matrices(), st.randoms())
def _ring_axioms(A, rnd):
    ring = build_ring(A)
    x, y, z = (_random_element(ring, rnd) for _ in range(3))
    assert x * y == y * x and (x * y) * z == x * (y * z)


@settings(max_examples=100, deadline=None, database=None)
@given(unipotent_matrices(), st.randoms())
def _reduce_idempotent(A, rnd):
    ring = build_ring(A)
    poly = [m for m in product(*(range(d + 2) for d in A.dims)) if rnd.random() < 0.3]
    once = reduce(ring, poly)
    assert reduce(ring, once.monomials()) == once


@settings(max_examples=100, deadline=None, database=None)
@given(unipotent_matrices())
def _top_class(A):
    assert top_class_coefficient(total_sw(A)) == prod(d + 1 for d in A.dims) % 2


@settings(max_examples=100, deadline=None, database=None)
@given(st.tuples(st.integers(1, 3), st.integers(1, 3)).flatmap(
    lambda rc: st.lists(st.lists(st.integers(-4, 4), min_size=rc[1], max_size=rc[1]),
                        min_size=rc[0], max_size=rc[0])))
def _snf_divisibility(m):
    d = smith_normal_form(m)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(prod(d[:j]) == minors_gcd(m, j) for j in range(1, len(d) + 1))


@settings(max_examples=100, deadline=None, database=None)
@given(unipotent_matrices(), st.randoms())
def _canonical_idempotent(A, rnd):
    c = canonical_form(A)
    assert canonical_form(c) == c == canonical_form(scramble(A, rnd))


def test_criterion_10_property_tests():
    results = {}
    for name, prop in [("ring axioms", _ring_axioms), ("reduce idempotence", _reduce_idempotent),
                       ("top class = chi mod 2", _top_class), ("SNF divisibility", _snf_divisibility),
                       ("canonical_form idempotence", _canonical_idempotent)]:
        try:
            prop()
            results[name] = "ok"
        except Exception as exc:  # noqa: BLE001 - reported below
            results[name] = f"failed: {exc!r}"[:200]
    ok = all(v == "ok" for v in results.values())
    report(10, ok, "100 cases each: " + ", ".join(f"{k} {v}" for k, v in results.items()))
