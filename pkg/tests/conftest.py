import random

import pytest

from matcyc import FieldMatrix, Matroid

# 3x6 binary demo code: columns 3 = 1+2, 5 = 6, used all over the tests.
DEMO_ROWS = (
    (1, 0, 1, 0, 1, 1),
    (0, 1, 1, 0, 1, 1),
    (0, 0, 0, 1, 1, 1),
)

# 3x7 binary simplex code: columns are the binary digits of 1..7.
SIMPLEX_ROWS = tuple(
    tuple((j >> i) & 1 for j in range(1, 8)) for i in range(3)
)

SIMPLEX_LINES = (
    (1, 2, 3), (1, 4, 5), (1, 6, 7),
    (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6),
)


@pytest.fixture(scope="session")
def demo_matrix():
    return FieldMatrix(2, DEMO_ROWS)


@pytest.fixture(scope="session")
def demo_matroid(demo_matrix):
    return Matroid.from_matrix(demo_matrix)


@pytest.fixture(scope="session")
def simplex_matrix():
    return FieldMatrix(2, SIMPLEX_ROWS)


@pytest.fixture(scope="session")
def simplex_matroid(simplex_matrix):
    return Matroid.from_matrix(simplex_matrix)


def random_matrix(rng: random.Random, q: int, n: int, k: int) -> FieldMatrix:
    while True:
        entries = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(k))
        if any(any(row) for row in entries):
            return FieldMatrix(q, entries)


def random_storage_matrix(rng: random.Random, q: int, n: int, k: int) -> FieldMatrix:
    """Random matrix conditioned on giving a non-degenerate storage code."""
    from matcyc import Matroid, is_nondegenerate

    while True:
        m = random_matrix(rng, q, n, k)
        if is_nondegenerate(Matroid.from_matrix(m)):
            return m


def matrix_corpus(seed: int, count: int, nmin=3, nmax=8, kmax=4, qs=(2, 3)):
    """Deterministic mixed GF(2)/GF(3) matrix corpus."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        q = qs[i % len(qs)]
        n = rng.randint(nmin, nmax)
        k = rng.randint(1, min(n, kmax))
        out.append(random_matrix(rng, q, n, k))
    return out


def vandermonde(q: int, k: int, points) -> FieldMatrix:
    return FieldMatrix(q, tuple(tuple(pow(x, i, q) for x in points) for i in range(k)))


def support_masks(matrix: FieldMatrix):
    """Bitmask supports of all nonzero codewords; independent distance oracle."""
    from matcyc import enumerate_codewords

    masks = []
    for word in enumerate_codewords(matrix):
        s = 0
        for j, v in enumerate(word):
            if v:
                s |= 1 << j
        if s:
            masks.append(s)
    return masks


def brute_restricted_distance(supports, xmask: int):
    """Min weight of the code restricted to xmask, or None if zero there."""
    weights = [bin(s & xmask).count("1") for s in supports if s & xmask]
    return min(weights) if weights else None
