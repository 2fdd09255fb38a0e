"""Shared instance factories for the test suite.

Random instances follow one recipe everywhere: a_k uniform in [0.5, 3],
b_k uniform in [-1, 1], mirrored exactly onto the palindromic pattern,
and a_0 pinned to 1 when n is even.  The generator seed for a sweep
instance is 1000 n + 100 sigma + seed, so every test run sees the same
instances.
"""

from functools import lru_cache

import numpy as np

from checkerlag import GridInstance, RecurrenceCoeffs, grid_from_coeffs


def random_coeffs(n: int, rng: np.random.Generator) -> RecurrenceCoeffs:
    a = rng.uniform(0.5, 3.0, n // 2 + 1)
    b = rng.uniform(-1.0, 1.0, n // 2 + 1)
    if n % 2 == 0:
        a[0] = 1.0
    return RecurrenceCoeffs.from_half(a, b, n)


def sweep_rng(n: int, sigma: int, seed: int) -> np.random.Generator:
    return np.random.default_rng(1000 * n + 100 * sigma + seed)


@lru_cache(maxsize=None)
def sweep_grid(n: int, sigma: int, seed: int) -> GridInstance:
    rng = sweep_rng(n, sigma, seed)
    xc = random_coeffs(n, rng)
    yc = random_coeffs(n + sigma, rng)
    return grid_from_coeffs(xc, yc)
