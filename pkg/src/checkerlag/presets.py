"""Closed-form classical node families as ready-made grid instances."""

from __future__ import annotations

import numpy as np

from .checkerboard import GridInstance, grid_from_nodes
from .errors import ValidationError
from .nodemap import NodeSequence


def padua_grid(n: int) -> GridInstance:
    """Padua family: x_r = cos(r pi / n), y_u = cos(u pi / (n+1)), sigma = 1.

    Coefficients are recovered through the inverse node map.
    """
    if n < 1:
        raise ValidationError("padua grid needs n >= 1")
    x = np.cos(np.arange(n + 1) * np.pi / n)
    y = np.cos(np.arange(n + 2) * np.pi / (n + 1))
    return grid_from_nodes(NodeSequence(x), NodeSequence(y))


def chebyshev_grid(n: int) -> GridInstance:
    """Square sigma = 0 grid on the n+1 zeros of the degree n+1 Chebyshev
    polynomial of the first kind: x_r = cos((2r+1) pi / (2n+2)), both axes."""
    if n < 0:
        raise ValidationError("chebyshev grid needs n >= 0")
    x = np.cos((2 * np.arange(n + 1) + 1) * np.pi / (2 * (n + 1)))
    return grid_from_nodes(NodeSequence(x), NodeSequence(x.copy()))
