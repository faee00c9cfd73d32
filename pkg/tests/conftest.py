import random
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from grbott.census import enumerate_matrices
from grbott.model import VectorMatrix


def compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def dims_up_to(max_n):
    return tuple(d for n in range(1, max_n + 1) for d in compositions(n))


@lru_cache(maxsize=None)
def admissible_up_to(max_n):
    """Every unipotent upper-triangular matrix with sum of dims <= max_n."""
    return tuple(A for d in dims_up_to(max_n) for A in enumerate_matrices(d))


def scramble(A, rng):
    perm = list(range(A.k))
    rng.shuffle(perm)
    return A.conjugate(perm)


def example1(a=1):
    return VectorMatrix.unipotent((2, 1), {(0, 1): [a]})


def example2(bits=(1, 0)):
    return VectorMatrix.unipotent((2, 2), {(0, 1): list(bits)})


def klein():
    return VectorMatrix.unipotent((1, 1), {(0, 1): [1]})


def torus(k=2):
    return VectorMatrix.unipotent((1,) * k)


@st.composite
def unipotent_matrices(draw, max_k=4, max_dim=3):
    k = draw(st.integers(1, max_k))
    dims = tuple(draw(st.lists(st.integers(1, max_dim), min_size=k, max_size=k)))
    upper = {
        (j, i): draw(st.lists(st.integers(0, 1), min_size=dims[i], max_size=dims[i]))
        for j in range(k) for i in range(j + 1, k)
    }
    return VectorMatrix.unipotent(dims, upper)


@pytest.fixture
def rng():
    return random.Random(20261017)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
