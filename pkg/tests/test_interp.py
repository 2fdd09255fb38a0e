"""Interpolation operator: node reproduction, linearity, quotient behavior."""

import numpy as np
import pytest

from checkerlag import (
    ValidationError,
    build_Q,
    build_checkerboard,
    eval_interpolant,
    eval_interpolant_many,
    interpolate,
    padua_grid,
    vandermonde,
)
from checkerlag.monomials import flatten_coeffs, graded_indices

from conftest import sweep_grid


def samples_for(grid, tau, f):
    cs = build_checkerboard(grid, tau)
    return {(int(r), int(u)): f(x, y) for r, u, x, y in cs.points}


class TestNodeReproduction:
    def test_constant(self):
        g = sweep_grid(2, 1, 0)
        p = interpolate(g, 0, samples_for(g, 0, lambda x, y: 1.0))
        cs = build_checkerboard(g, 0)
        vals = eval_interpolant_many(p, np.column_stack([cs.xs, cs.ys]))
        np.testing.assert_allclose(vals, 1.0, atol=1e-11)

    def test_coordinate_function(self):
        g = sweep_grid(1, 0, 0)
        p = interpolate(g, 0, samples_for(g, 0, lambda x, y: x))
        for r, u, x, y in build_checkerboard(g, 0).points:
            assert eval_interpolant(p, (x, y)) == pytest.approx(x, abs=1e-12)

    def test_zero_samples_give_zero(self):
        g = sweep_grid(3, 2, 1)
        p = interpolate(g, 1, samples_for(g, 1, lambda x, y: 0.0))
        pts = np.random.default_rng(0).uniform(-1, 1, (20, 2))
        np.testing.assert_allclose(eval_interpolant_many(p, pts), 0.0, atol=1e-15)

    @pytest.mark.parametrize("n,sigma", [(2, 0), (5, 3), (12, 6)])
    def test_generic_function(self, n, sigma):
        g = sweep_grid(n, sigma, 0)
        f = lambda x, y: np.sin(1.3 * x) * np.cos(0.7 * y) + 0.1 * x * y
        for tau in (0, 1):
            p = interpolate(g, tau, samples_for(g, tau, f))
            cs = build_checkerboard(g, tau)
            vals = eval_interpolant_many(p, np.column_stack([cs.xs, cs.ys]))
            want = np.array([f(x, y) for _, _, x, y in cs.points])
            scale = np.max(np.abs(want))
            assert np.max(np.abs(vals - want)) <= 1e-8 * max(1.0, scale)


class TestLinearity:
    def test_combination(self):
        g = sweep_grid(4, 2, 0)
        f = lambda x, y: x * y + 0.3
        h = lambda x, y: np.exp(0.2 * x) - y
        alpha, beta = 1.7, -0.4
        pf = interpolate(g, 0, samples_for(g, 0, f))
        ph = interpolate(g, 0, samples_for(g, 0, h))
        combo = lambda x, y: alpha * f(x, y) + beta * h(x, y)
        pc = interpolate(g, 0, samples_for(g, 0, combo))
        pts = np.random.default_rng(1).uniform(-1, 1, (30, 2))
        lhs = eval_interpolant_many(pc, pts)
        rhs = alpha * eval_interpolant_many(pf, pts) + beta * eval_interpolant_many(ph, pts)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-10)


class TestQuotientBehavior:
    def test_deviation_of_constant_in_nullspace(self):
        # interpolating f = 1 reproduces 1 at nodes; the deviation polynomial
        # (interpolant - 1) has coefficients in the Vandermonde null space
        g = sweep_grid(3, 4, 0)
        tau = 0
        p = interpolate(g, tau, samples_for(g, tau, lambda x, y: 1.0))
        cs = build_checkerboard(g, tau)
        d = g.n + g.delta
        # deviation coefficients from the expanded basis representation
        from checkerlag import monomial_coeffs
        dev = np.zeros((d + 1, d + 1))
        for (r, u), w in zip(zip(cs.rs, cs.us), p.values):
            mp = monomial_coeffs(g, int(r), int(u))
            g0 = mp(g.xnodes.nodes[r], g.ynodes.nodes[u])[0]
            dev += w * mp.coeffs / g0
        dev[0, 0] -= 1.0
        V = vandermonde(cs, d)
        resid = V @ flatten_coeffs(dev, d)
        assert np.max(np.abs(resid)) < 1e-7

    def test_polynomial_reproduced_mod_Q(self):
        # sampling a random polynomial r in P_{n+delta}: interpolant minus r
        # vanishes on the node set, so it lies in span(Q) numerically
        g = sweep_grid(4, 4, 1)
        tau = 1
        d = g.n + g.delta
        rng = np.random.default_rng(7)
        keep = np.add.outer(np.arange(d + 1), np.arange(d + 1)) <= d
        C = np.where(keep, rng.normal(size=(d + 1, d + 1)), 0.0)
        from checkerlag.monomials import evaluate_coeffs
        f = lambda x, y: evaluate_coeffs(C, x, y)[0]
        p = interpolate(g, tau, samples_for(g, tau, f))
        cs = build_checkerboard(g, tau)
        vals = eval_interpolant_many(p, np.column_stack([cs.xs, cs.ys]))
        want = np.array([f(x, y) for _, _, x, y in cs.points])
        assert np.max(np.abs(vals - want)) < 1e-8 * max(1.0, np.max(np.abs(want)))


class TestSampleValidation:
    def test_missing_key(self):
        g = sweep_grid(2, 1, 0)
        s = samples_for(g, 0, lambda x, y: 1.0)
        s.pop(next(iter(s)))
        with pytest.raises(ValidationError):
            interpolate(g, 0, s)

    def test_extra_key(self):
        g = sweep_grid(2, 1, 0)
        s = samples_for(g, 0, lambda x, y: 1.0)
        s[(0, 1)] = 2.0
        with pytest.raises(ValidationError):
            interpolate(g, 0, s)

    def test_wrong_parity_keys(self):
        g = sweep_grid(2, 1, 0)
        with pytest.raises(ValidationError):
            interpolate(g, 1, samples_for(g, 0, lambda x, y: 1.0))


class TestRungeSweep:
    def test_sup_error_decreases(self):
        f = lambda x, y: 1.0 / (1.0 + 25.0 * (x * x + y * y))
        gx, gy = np.meshgrid(np.linspace(-1, 1, 41), np.linspace(-1, 1, 41))
        lattice = np.column_stack([gx.ravel(), gy.ravel()])
        errs = []
        for n in (4, 8, 12):
            g = padua_grid(n)
            p = interpolate(g, 0, samples_for(g, 0, f))
            vals = eval_interpolant_many(p, lattice)
            want = f(lattice[:, 0], lattice[:, 1])
            errs.append(float(np.max(np.abs(vals - want))))
        assert errs[0] > errs[1] > errs[2]
