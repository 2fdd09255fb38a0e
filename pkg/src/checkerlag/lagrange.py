"""Bivariate Lagrange basis on a checkerboard set.

For an anchor node (x_s, y_v) the unnormalized basis polynomial is

    G = K_d + K_{s-d-1} + J,      d = floor(sigma/2),

where K_t is the double kernel sum over the x recurrence (outer index) and
y recurrence (inner index capped at n - j + t), and J is the boundary term
carrying p_n.  G vanishes at every other node of the same parity set, is
positive at its anchor, and L = G / G(anchor) is the Lagrange element.

When sigma = 0 the inner sum of K_d reaches the coefficient index n+sigma,
one past the stored y coefficients; the palindromic symmetry extends the
sequence by c_{n+sigma} = c_0, which is exactly the extension under which
the recurrence polynomial of degree n+sigma+1 vanishes at all y nodes.
All sums are accumulated in extended precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checkerboard import CheckerboardSet, GridInstance, build_checkerboard
from .errors import ValidationError
from .orthopoly import LONG, eval_sequence

# Points per chunk in batched evaluation; bounds the cumulative-sum tensor.
_CHUNK = 256


def _c_extended(grid: GridInstance) -> np.ndarray:
    """y coefficients with the palindromic extension c_{n+sigma} = c_0."""
    c = grid.ycoeffs.a.astype(LONG)
    if len(c) == 0:
        return c
    return np.concatenate([c, c[:1]])


def _a0_factor(grid: GridInstance) -> LONG:
    # n = 0 leaves no x coefficients; the overall factor cancels in L.
    return grid.xcoeffs.a.astype(LONG)[0] if grid.n >= 1 else LONG(1.0)


def _g_matrix(grid: GridInstance, px: np.ndarray, py: np.ndarray,
              ax: np.ndarray, ay: np.ndarray) -> np.ndarray:
    """G(point_i; anchor_j) for coordinate arrays, extended precision.

    px, py: point coordinates (length P); ax, ay: anchor coordinates
    (length A).  Returns a (P, A) longdouble matrix.
    """
    n, sigma, delta = grid.n, grid.sigma, grid.delta
    P, A = len(px), len(ay)
    if n == 0 and sigma == 0:
        return np.ones((P, A), dtype=LONG)
    c_ext = _c_extended(grid)
    a = grid.xcoeffs.a.astype(LONG)
    Pp = eval_sequence(grid.xcoeffs, np.asarray(px, dtype=LONG), n)
    Pa = eval_sequence(grid.xcoeffs, np.asarray(ax, dtype=LONG), n)
    Qp = eval_sequence(grid.ycoeffs, np.asarray(py, dtype=LONG), n + sigma)
    Qa = eval_sequence(grid.ycoeffs, np.asarray(ay, dtype=LONG), n + sigma)

    caps_main = [(n - j + delta, n - j + sigma - delta - 1) for j in range(n)]
    caps_bnd = (sigma - delta - 1, delta)
    a0 = _a0_factor(grid)

    out = np.empty((P, A), dtype=LONG)
    for lo in range(0, P, _CHUNK):
        hi = min(lo + _CHUNK, P)
        # W[k] = c_k q_k(y_i) q_k(y_j); CS[k] = running sum over k
        W = (c_ext[:, None] * Qp[:, lo:hi])[:, :, None] * Qa[:, None, :]
        CS = np.cumsum(W, axis=0)
        zero = np.zeros((hi - lo, A), dtype=LONG)

        def inner(cap):
            return CS[cap] if cap >= 0 else zero

        G = np.zeros((hi - lo, A), dtype=LONG)
        for j, (c1, c2) in enumerate(caps_main):
            G += a[j] * np.outer(Pp[j, lo:hi], Pa[j]) * (inner(c1) + inner(c2))
        G += a0 * np.outer(Pp[n, lo:hi], Pa[n]) * (inner(caps_bnd[0]) + inner(caps_bnd[1]))
        out[lo:hi] = G
    return out


def _validate_delta_param(grid: GridInstance, delta_param: int) -> None:
    upper = max(grid.sigma - 1, grid.delta)
    if not -1 <= delta_param <= upper:
        raise ValidationError(
            f"delta parameter must lie in [-1, {upper}] for sigma={grid.sigma}"
        )


def kernel_K(grid: GridInstance, delta_param: int, point, anchor) -> float:
    """Double kernel sum K_t at one (point, anchor) pair of coordinates."""
    _validate_delta_param(grid, delta_param)
    n, sigma = grid.n, grid.sigma
    x, y = (LONG(point[0]),), (LONG(point[1]),)
    xs, ys = (LONG(anchor[0]),), (LONG(anchor[1]),)
    if n == 0:
        return 0.0
    c_ext = _c_extended(grid)
    a = grid.xcoeffs.a.astype(LONG)
    p = eval_sequence(grid.xcoeffs, np.asarray(x, dtype=LONG), n - 1)
    ps = eval_sequence(grid.xcoeffs, np.asarray(xs, dtype=LONG), n - 1)
    q = eval_sequence(grid.ycoeffs, np.asarray(y, dtype=LONG), n + sigma)
    qs = eval_sequence(grid.ycoeffs, np.asarray(ys, dtype=LONG), n + sigma)
    w = c_ext * q[:, 0] * qs[:, 0]
    cs = np.concatenate([[LONG(0.0)], np.cumsum(w)])
    total = LONG(0.0)
    for j in range(n):
        cap = n - j + delta_param
        assert cap <= n + sigma, "inner sum cap exceeds available y sequence"
        if cap >= 0:
            total += a[j] * p[j, 0] * ps[j, 0] * cs[cap + 1]
    return float(total)


def boundary_J(grid: GridInstance, point, anchor) -> float:
    """Boundary term carrying p_n, at one (point, anchor) coordinate pair."""
    n, sigma, delta = grid.n, grid.sigma, grid.delta
    if n == 0 and sigma == 0:
        return 1.0
    p = eval_sequence(grid.xcoeffs, np.asarray([point[0]], dtype=LONG), n)
    ps = eval_sequence(grid.xcoeffs, np.asarray([anchor[0]], dtype=LONG), n)
    q = eval_sequence(grid.ycoeffs, np.asarray([point[1]], dtype=LONG), n + sigma)
    qs = eval_sequence(grid.ycoeffs, np.asarray([anchor[1]], dtype=LONG), n + sigma)
    c_ext = _c_extended(grid)
    w = c_ext * q[:, 0] * qs[:, 0]
    cs = np.concatenate([[LONG(0.0)], np.cumsum(w)])
    total = LONG(0.0)
    for cap in (sigma - delta - 1, delta):
        if cap >= 0:
            total += cs[cap + 1]
    return float(_a0_factor(grid) * p[n, 0] * ps[n, 0] * total)


def eval_G(grid: GridInstance, point, anchor) -> float:
    """Unnormalized basis value G(point; anchor) for coordinate pairs."""
    g = _g_matrix(grid,
                  np.asarray([point[0]], dtype=LONG),
                  np.asarray([point[1]], dtype=LONG),
                  np.asarray([anchor[0]], dtype=LONG),
                  np.asarray([anchor[1]], dtype=LONG))
    return float(g[0, 0])


@dataclass(frozen=True)
class BasisFunction:
    """One Lagrange basis element, stored as grid reference plus anchor.

    Values are produced on demand from the recurrences; nothing is expanded.
    """

    grid: GridInstance
    s: int
    v: int
    delta: int
    normalizer: float
    _anchor_hi: tuple = field(repr=False, compare=False)
    _norm_hi: object = field(repr=False, compare=False)

    @property
    def anchor(self) -> tuple[float, float]:
        return (float(self._anchor_hi[0]), float(self._anchor_hi[1]))

    @property
    def tau(self) -> int:
        return (self.s + self.v) % 2


def build_basis(grid: GridInstance, s: int, v: int) -> BasisFunction:
    """Basis element anchored at grid node indices (s, v)."""
    if not (0 <= s <= grid.n and 0 <= v <= grid.n + grid.sigma):
        raise ValidationError(f"anchor indices ({s}, {v}) outside the grid")
    xs, yv = grid.xhi[s], grid.yhi[v]
    g0 = _g_matrix(grid, np.asarray([xs]), np.asarray([yv]),
                   np.asarray([xs]), np.asarray([yv]))[0, 0]
    if not g0 > 0:
        raise ValidationError(
            f"normalizer G(anchor; anchor) = {float(g0):.3e} is not positive; "
            "grid data is inconsistent"
        )
    return BasisFunction(grid, s, v, grid.delta, float(g0), (xs, yv), g0)


def eval_L(basis: BasisFunction, point) -> float:
    """Normalized basis value L(point; anchor); exactly 1 at the anchor."""
    return float(eval_L_many(basis, np.asarray([point], dtype=float))[0])


def eval_L_many(basis: BasisFunction, points: np.ndarray) -> np.ndarray:
    """L at each row (x, y) of a points array.

    Points that coincide (as floats) with the anchor are evaluated at the
    anchor's internal coordinates, so the value there is exactly 1.
    """
    pts = np.asarray(points, dtype=float)
    xs, yv = basis._anchor_hi
    px = pts[:, 0].astype(LONG)
    py = pts[:, 1].astype(LONG)
    at_anchor = (pts[:, 0] == float(xs)) & (pts[:, 1] == float(yv))
    px[at_anchor] = xs
    py[at_anchor] = yv
    g = _g_matrix(basis.grid, px, py, np.asarray([xs]), np.asarray([yv]))[:, 0]
    return (g / basis._norm_hi).astype(float)


def _set_anchor_arrays(grid: GridInstance, cset: CheckerboardSet):
    """Extended-precision coordinates of a checkerboard set's points."""
    return grid.xhi[cset.rs], grid.yhi[cset.us]


def basis_values_on_set(grid: GridInstance, cset: CheckerboardSet,
                        points_x: np.ndarray, points_y: np.ndarray) -> np.ndarray:
    """Matrix L_j(point_i) over all anchors j of the set; shape (P, count)."""
    ax, ay = _set_anchor_arrays(grid, cset)
    g = _g_matrix(grid, np.asarray(points_x, dtype=LONG),
                  np.asarray(points_y, dtype=LONG), ax, ay)
    norm = np.diag(_g_matrix(grid, ax, ay, ax, ay)).copy()
    if not np.all(norm > 0):
        raise ValidationError("non-positive normalizer on the node set")
    return (g / norm[None, :]).astype(float)


def delta_error_for_points(grid: GridInstance, xs, ys) -> float:
    """Worst |L(p_i; p_j) - delta_ij| treating the given coordinates as the set."""
    ax = np.asarray(xs, dtype=LONG)
    ay = np.asarray(ys, dtype=LONG)
    g = _g_matrix(grid, ax, ay, ax, ay)
    norm = np.diag(g).copy()
    if not np.all(norm > 0):
        raise ValidationError("non-positive normalizer on the point set")
    L = g / norm[None, :]
    return float(np.max(np.abs(L - np.eye(len(ax), dtype=LONG))))


def max_delta_error(grid: GridInstance, tau: int) -> float:
    """Worst |L(node_i; node_j) - delta_ij| over all node pairs of S_tau."""
    cset = build_checkerboard(grid, tau)
    return delta_error_for_points(grid, grid.xhi[cset.rs], grid.yhi[cset.us])
