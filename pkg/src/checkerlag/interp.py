"""Interpolation operator built on the checkerboard Lagrange basis."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checkerboard import CheckerboardSet, GridInstance, build_checkerboard
from .errors import ValidationError
from .lagrange import _g_matrix
from .orthopoly import LONG


@dataclass(frozen=True)
class Interpolant:
    """Linear combination sum_i f_i L_i over the nodes of one parity set."""

    grid: GridInstance
    tau: int
    cset: CheckerboardSet
    values: np.ndarray
    _norms_hi: np.ndarray = field(repr=False, compare=False)
    _ax_hi: np.ndarray = field(repr=False, compare=False)
    _ay_hi: np.ndarray = field(repr=False, compare=False)


def interpolate(grid: GridInstance, tau: int, samples: dict) -> Interpolant:
    """Interpolant through samples keyed by node index pairs (r, u).

    The keys must cover the parity-tau nodes exactly once; missing or
    extra keys are rejected.
    """
    cset = build_checkerboard(grid, tau)
    want = {(int(r), int(u)) for r, u in zip(cset.rs, cset.us)}
    got = {(int(r), int(u)) for r, u in samples}
    if got != want:
        missing = sorted(want - got)
        extra = sorted(got - want)
        raise ValidationError(
            f"samples do not cover S_{tau}: missing {missing[:4]}"
            f"{'...' if len(missing) > 4 else ''}, extra {extra[:4]}"
            f"{'...' if len(extra) > 4 else ''}"
        )
    values = np.array([float(samples[(int(r), int(u))])
                       for r, u in zip(cset.rs, cset.us)])
    if not np.all(np.isfinite(values)):
        raise ValidationError("sample values must be finite")
    ax = grid.xhi[cset.rs]
    ay = grid.yhi[cset.us]
    norms = np.diag(_g_matrix(grid, ax, ay, ax, ay)).copy()
    if not np.all(norms > 0):
        raise ValidationError("non-positive basis normalizer on the node set")
    return Interpolant(grid, tau, cset, values, norms, ax, ay)


def eval_interpolant_many(p: Interpolant, points: np.ndarray) -> np.ndarray:
    """Interpolant values at each (x, y) row of the points array.

    Points that coincide with a node of the set (as floats) are evaluated
    at the node's internal coordinates.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or not np.all(np.isfinite(pts)):
        raise ValidationError("points must be a finite (m, 2) array")
    px = pts[:, 0].astype(LONG)
    py = pts[:, 1].astype(LONG)
    node_x = p._ax_hi.astype(float)
    node_y = p._ay_hi.astype(float)
    for i in range(len(pts)):
        hit = np.nonzero((node_x == pts[i, 0]) & (node_y == pts[i, 1]))[0]
        if hit.size:
            px[i] = p._ax_hi[hit[0]]
            py[i] = p._ay_hi[hit[0]]
    g = _g_matrix(p.grid, px, py, p._ax_hi, p._ay_hi)
    weights = (p.values.astype(LONG) / p._norms_hi)
    return (g @ weights).astype(float)


def eval_interpolant(p: Interpolant, point) -> float:
    """Interpolant value at one point."""
    return float(eval_interpolant_many(p, np.asarray([point], dtype=float))[0])
