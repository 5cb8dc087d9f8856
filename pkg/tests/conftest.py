import os

# Every solve_linear call re-checks its solution against the system.
os.environ.setdefault("MATBREAK_CHECK", "1")

import itertools  # noqa: E402

import pytest  # noqa: E402

from matbreak.algebra import ModMatrix  # noqa: E402
from matbreak.rng import Xoshiro256  # noqa: E402


def det_leibniz(rows, m):
    """Determinant by permutation expansion; independent of any elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total % m


def naive_mul(a, b, m):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % m for j in range(n)] for i in range(n)]


@pytest.fixture
def rng():
    return Xoshiro256(20240601)


def rand_matrix(rng, n, m):
    return ModMatrix.random(n, m, rng)
