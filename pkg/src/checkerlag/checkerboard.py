"""Rectangular grids from two node sequences and their parity split.

A grid instance pairs the x nodes (length n+1) with the y nodes (length
n+sigma+1) and keeps the recurrence coefficients that generate them.  The
parity subsets keep the points with (r+u) mod 2 equal to 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .nodemap import NodeSequence, _nodes_hi, nodes_from_coeffs
from .orthopoly import LONG, RecurrenceCoeffs

# Consistency tolerance between stored nodes and the node map of the
# stored coefficients, relative to max(1, span).
GRID_CONSISTENCY_ATOL = 1e-8


@dataclass(frozen=True)
class GridInstance:
    """Node sequences plus the coefficient pairs that generate them.

    The extended-precision node arrays carried alongside are derived from
    the coefficients and are what every kernel evaluation uses; the public
    float arrays are rounded views of the same data.
    """

    xcoeffs: RecurrenceCoeffs
    ycoeffs: RecurrenceCoeffs
    xnodes: NodeSequence
    ynodes: NodeSequence
    xhi: np.ndarray = field(repr=False, compare=False)
    yhi: np.ndarray = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.xnodes) - 1

    @property
    def sigma(self) -> int:
        return len(self.ynodes) - len(self.xnodes)

    @property
    def delta(self) -> int:
        return self.sigma // 2


def _check_axis(coeffs: RecurrenceCoeffs, nodes: NodeSequence, axis: str) -> np.ndarray:
    """Cross-check nodes against the coefficient node map; return hi nodes."""
    if coeffs.n == 0:
        if len(nodes) != 1:
            raise ValidationError(f"{axis}: empty coefficients need a single node")
        return nodes.nodes.astype(LONG)
    if coeffs.n != len(nodes) - 1:
        raise ValidationError(f"{axis}: coefficient length must be node count - 1")
    hi = _nodes_hi(coeffs)
    tol = GRID_CONSISTENCY_ATOL * max(1.0, nodes.span)
    err = float(np.max(np.abs(hi.astype(float) - nodes.nodes)))
    if err > tol:
        raise ValidationError(
            f"{axis}: stored nodes disagree with the coefficient node map "
            f"by {err:.3e} (tolerance {tol:.3e})"
        )
    return hi


def make_grid(xcoeffs: RecurrenceCoeffs, ycoeffs: RecurrenceCoeffs,
              xnodes: NodeSequence, ynodes: NodeSequence) -> GridInstance:
    """Validated grid from both representations of each axis."""
    if len(ynodes) < len(xnodes):
        raise ValidationError("y nodes must be at least as many as x nodes (sigma >= 0)")
    xhi = _check_axis(xcoeffs, xnodes, "x axis")
    yhi = _check_axis(ycoeffs, ynodes, "y axis")
    return GridInstance(xcoeffs, ycoeffs, xnodes, ynodes, xhi, yhi)


def grid_from_coeffs(xcoeffs: RecurrenceCoeffs, ycoeffs: RecurrenceCoeffs) -> GridInstance:
    """Grid whose nodes are derived from the given coefficient pairs."""
    if ycoeffs.n < xcoeffs.n:
        raise ValidationError("y coefficients must be at least as long as x (sigma >= 0)")
    return make_grid(xcoeffs, ycoeffs,
                     nodes_from_coeffs(xcoeffs), nodes_from_coeffs(ycoeffs))


def grid_from_nodes(xnodes: NodeSequence, ynodes: NodeSequence) -> GridInstance:
    """Grid whose coefficients are recovered by the inverse node map."""
    from .nodemap import coeffs_from_nodes  # local import to keep module DAG flat

    if len(ynodes) < len(xnodes):
        raise ValidationError("y nodes must be at least as many as x nodes (sigma >= 0)")
    if len(xnodes) == 1:
        xc = RecurrenceCoeffs(np.empty(0), np.empty(0))
    else:
        xc = coeffs_from_nodes(xnodes)
    if len(ynodes) == 1:
        yc = RecurrenceCoeffs(np.empty(0), np.empty(0))
    else:
        yc = coeffs_from_nodes(ynodes)
    return make_grid(xc, yc, xnodes, ynodes)


def count_nodes(n: int, sigma: int, tau: int) -> int:
    """Number of parity-tau points of the (n+1) by (n+sigma+1) grid.

    [(n+1)(n+sigma+1)+1]/2 - tau when n and sigma are both even, else
    (n+1)(n+sigma+1)/2 for either parity.
    """
    if n < 0 or sigma < 0:
        raise ValidationError("n and sigma must be nonnegative")
    if tau not in (0, 1):
        raise ValidationError("tau must be 0 or 1")
    total = (n + 1) * (n + sigma + 1)
    if n % 2 == 0 and sigma % 2 == 0:
        return (total + 1) // 2 - tau
    return total // 2


@dataclass(frozen=True)
class CheckerboardSet:
    """Parity-filtered grid points, row-major by (r, u)."""

    tau: int
    rs: np.ndarray
    us: np.ndarray
    xs: np.ndarray
    ys: np.ndarray

    @property
    def count(self) -> int:
        return len(self.rs)

    @property
    def points(self) -> list[tuple[int, int, float, float]]:
        return [(int(r), int(u), float(x), float(y))
                for r, u, x, y in zip(self.rs, self.us, self.xs, self.ys)]


def build_checkerboard(grid: GridInstance, tau: int) -> CheckerboardSet:
    """All grid points with index parity tau, ordered row-major by (r, u)."""
    if tau not in (0, 1):
        raise ValidationError("tau must be 0 or 1")
    n, nsig = grid.n, grid.n + grid.sigma
    rs, us = [], []
    for r in range(n + 1):
        for u in range(nsig + 1):
            if (r + u) % 2 == tau:
                rs.append(r)
                us.append(u)
    rs = np.array(rs, dtype=int)
    us = np.array(us, dtype=int)
    out = CheckerboardSet(tau, rs, us,
                          grid.xnodes.nodes[rs], grid.ynodes.nodes[us])
    assert out.count == count_nodes(grid.n, grid.sigma, tau)
    return out
