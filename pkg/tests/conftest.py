import random

import pytest

from k0lab.graphs import CayleySpec
from k0lab.zmatrix import IntMatrix


def complete_graph_spec(n: int, loops: int) -> CayleySpec:
    """K_n^(loops) as a weighted Cayley spec over Z_n (loops >= 1)."""
    gens = list(range(n))
    weights = [loops if g == 0 else 1 for g in gens]
    return CayleySpec.cyclic(n, gens, weights)


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 4) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


def random_unimodular(rng: random.Random, n: int, ops: int = 12) -> IntMatrix:
    """Product of elementary row operations: swaps, sign flips, shears."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if kind == 0 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 1:
            m[i] = [-x for x in m[i]]
        elif i != j:
            q = rng.randint(-3, 3)
            m[i] = [a + q * b for a, b in zip(m[i], m[j])]
    return IntMatrix.from_rows(m)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
