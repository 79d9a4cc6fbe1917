"""Fixed matrices shared by several test modules."""

import random

from afinv.exactnum import IntMatrix

# primitive nonnegative matrices, sizes 2 to 4
PRIMITIVE_SUITE = [
    [[5, 2], [2, 1]],
    [[5, 1], [4, 1]],
    [[2, 1], [1, 1]],
    [[3, 1], [2, 1]],
    [[1, 1], [1, 0]],
    [[1, 1, 1], [1, 0, 0], [0, 1, 0]],
    [[4, 3, 2], [2, 2, 1], [1, 1, 1]],
    [[2, 1, 0], [1, 1, 1], [0, 1, 1]],
    [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    [[2, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]],
]

# hyperbolic nonnegative matrices in SL(2, Z)
HYPERBOLIC_2X2 = [
    [[5, 2], [2, 1]],
    [[5, 1], [4, 1]],
    [[2, 1], [1, 1]],
    [[1, 1], [1, 2]],
    [[3, 2], [1, 1]],
    [[3, 1], [2, 1]],
    [[1, 2], [2, 5]],
    [[7, 4], [5, 3]],
    [[4, 3], [1, 1]],
]

TRIBONACCI = [[1, 1, 1], [1, 0, 0], [0, 1, 0]]


def random_sl2(rng: random.Random, bound: int = 5, max_tries: int = 10_000) -> IntMatrix:
    for _ in range(max_tries):
        a, b, c = (rng.randint(-bound, bound) for _ in range(3))
        if a != 0 and (1 + b * c) % a == 0:
            d = (1 + b * c) // a
            if abs(d) <= bound:
                return IntMatrix(((a, b), (c, d)))
    raise RuntimeError("no SL(2,Z) sample found")


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    """Product of random elementary integer operations (small entries)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        kind = rng.random()
        if n > 1 and kind < 0.7:
            c = rng.choice([-2, -1, 1, 2])
            rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
        elif n > 1 and kind < 0.85:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-x for x in rows[i]]
    return IntMatrix(tuple(map(tuple, rows)))
