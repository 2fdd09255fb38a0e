"""Monomial representation: ordering, affine composition, recurrence tables."""

import numpy as np
import pytest

from checkerlag import MonomialPoly, RecurrenceCoeffs, ValidationError, eval_sequence, graded_indices, space_dim
from checkerlag.monomials import (
    flatten_coeffs,
    poly_from_roots,
    recurrence_monomial_table,
    unflatten_coeffs,
)


def test_graded_order_d2():
    assert graded_indices(2) == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]


def test_space_dim():
    for d in range(10):
        assert space_dim(d) == len(graded_indices(d))


def test_flatten_round_trip():
    rng = np.random.default_rng(0)
    d = 4
    C = np.zeros((d + 1, d + 1))
    for (j, k) in graded_indices(d):
        C[j, k] = rng.normal()
    np.testing.assert_array_equal(unflatten_coeffs(flatten_coeffs(C, d), d), C)


def test_from_vector_size_check():
    with pytest.raises(ValidationError):
        MonomialPoly.from_vector([1.0, 2.0], 2)


def test_evaluate():
    # 1 + 2x + 3y + xy at (2, 5)
    C = np.zeros((2, 2))
    C[0, 0], C[1, 0], C[0, 1], C[1, 1] = 1, 2, 3, 1
    p = MonomialPoly(1, C)
    assert p(2.0, 5.0)[0] == pytest.approx(1 + 4 + 15 + 10)


def test_compose_affine_matches_direct_eval():
    rng = np.random.default_rng(1)
    d = 5
    keep = np.add.outer(np.arange(d + 1), np.arange(d + 1)) <= d
    C = np.where(keep, rng.normal(size=(d + 1, d + 1)), 0.0)
    p = MonomialPoly(d, C)
    q = p.compose_affine(0.5, -0.3, 2.0, 0.7)
    for _ in range(10):
        X, Y = rng.uniform(-1, 1, 2)
        assert q(X, Y)[0] == pytest.approx(p(0.5 * X - 0.3, 2.0 * Y + 0.7)[0], rel=1e-12)


def test_recurrence_table_matches_eval():
    c = RecurrenceCoeffs([1.0, 2.0, 2.0], [0.1, -0.2, -0.2])
    T = recurrence_monomial_table(c, 3, dtype=float)
    for x in (0.3, -1.1, 2.0):
        direct = eval_sequence(c, x, 3)
        powers = x ** np.arange(4)
        np.testing.assert_allclose(T @ powers, direct, rtol=1e-13)


def test_poly_from_roots():
    roots = np.array([2.0, -1.0, 0.5])
    c = poly_from_roots(roots, dtype=float)
    # (x-2)(x+1)(x-0.5) = x^3 - 1.5x^2 - 1.5x + 1
    np.testing.assert_allclose(c, [1.0, -1.5, -1.5, 1.0])
