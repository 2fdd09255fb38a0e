"""Vanishing subspace and quotient basis across the three parity cases."""

import numpy as np
import pytest

from checkerlag import (
    build_Q,
    build_V,
    build_checkerboard,
    count_nodes,
    quotient_dim,
    space_dim,
)
from checkerlag.monomials import evaluate_coeffs

from conftest import sweep_grid


class TestBuildV:
    @pytest.mark.parametrize("sigma", [0, 1])
    def test_empty_when_delta_zero(self, sigma):
        assert build_V(sweep_grid(3, sigma, 0)) == []

    def test_sigma2_single_omega(self):
        g = sweep_grid(3, 2, 0)
        V = build_V(g)
        assert len(V) == 1
        # the element is omega(x) alone: vanishes at every x node, any y
        vals = V[0](g.xnodes.nodes, np.full(g.n + 1, 0.37))
        assert np.max(np.abs(vals)) < 1e-9 * V[0].max_abs_coeff * 100

    def test_sigma5_three_elements(self):
        g = sweep_grid(2, 5, 0)
        V = build_V(g)
        assert len(V) == 3

    def test_count_formula(self):
        for sigma in range(7):
            delta = sigma // 2
            assert len(build_V(sweep_grid(2, sigma, 1))) == delta * (delta + 1) // 2


class TestBuildQ:
    def test_case_I_equals_V(self):
        g = sweep_grid(4, 3, 0)
        q = build_Q(g, 0)
        assert q.case == "I"
        assert q.M == 1  # delta = 1
        assert len(q.elements) == 1

    def test_case_II_dimensions(self):
        # n = 3, sigma = 2: M = 1 + 2
        q = build_Q(sweep_grid(3, 2, 0), 0)
        assert q.case == "II"
        assert q.M == 3

    def test_case_III_dimensions(self):
        # n = 2, sigma = 2, tau = 0: M = 1 + 1 + 0 and dim P_{n+delta} - N = 2
        g = sweep_grid(2, 2, 0)
        q = build_Q(g, 0)
        assert q.case == "III"
        assert q.M == 2
        assert space_dim(3) - count_nodes(2, 2, 0) == 2

    def test_case_III_tau_shift(self):
        g = sweep_grid(2, 0, 0)
        assert build_Q(g, 0).M == 1
        assert build_Q(g, 1).M == 2

    @pytest.mark.parametrize("n,sigma", [(1, 0), (2, 2), (5, 4), (9, 6), (12, 5), (12, 6)])
    def test_vanishing_on_nodes(self, n, sigma):
        g = sweep_grid(n, sigma, 1)
        for tau in (0, 1):
            q = build_Q(g, tau)
            cs = build_checkerboard(g, tau)
            for el in q.elements:
                vals = el(cs.xs, cs.ys)
                # elements are unit-max-coefficient; measure against an
                # evaluation-magnitude bound on the node box
                rx = np.max(np.abs(g.xnodes.nodes))
                ry = np.max(np.abs(g.ynodes.nodes))
                bound = float(rx ** np.arange(el.degree + 1)
                              @ np.abs(el.coeffs) @ ry ** np.arange(el.degree + 1))
                assert np.max(np.abs(vals)) < 1e-9 * max(1.0, bound)

    @pytest.mark.parametrize("n,sigma", [(3, 2), (6, 4), (11, 6)])
    def test_independence_rank(self, n, sigma):
        g = sweep_grid(n, sigma, 2)
        for tau in (0, 1):
            q = build_Q(g, tau)
            rows = np.array([el.to_vector() for el in q.elements])
            sv = np.linalg.svd(rows, compute_uv=False)
            assert int(np.sum(sv > 1e-10 * sv[0])) == q.M

    def test_dimension_bookkeeping(self):
        for n in range(1, 13):
            for sigma in range(7):
                for tau in (0, 1):
                    M = quotient_dim(n, sigma, tau)
                    d = n + sigma // 2
                    assert M + count_nodes(n, sigma, tau) == space_dim(d)

    @pytest.mark.parametrize("n,sigma", [(3, 2), (4, 4), (7, 0)])
    def test_generator_degree_exact(self, n, sigma):
        # case II/III cross generators carry total degree exactly n + delta
        g = sweep_grid(n, sigma, 0)
        q = build_Q(g, 0)
        delta = sigma // 2
        n_v = delta * (delta + 1) // 2
        d = n + delta
        for el in q.elements[n_v:]:
            top = max(abs(el.coeffs[j, d - j]) for j in range(d + 1))
            assert top > 1e-12 * el.max_abs_coeff
