"""Vanishing polynomials on a checkerboard set and the quotient basis.

The base subspace consists of the node polynomial of the x axis,
omega(x) = prod_r (x - x_r), multiplied by the monomials x^j y^k with
j + k <= delta - 1.  When sigma is even it is enlarged by the cross
generators

    p_{n-j}(x) q_{j+delta}(y) - (-1)^tau p_j(x) q_{n+delta-j}(y),

for j = 0 .. m-1 (n = 2m-1 odd) or j = 0 .. m-1+tau (n = 2m even). The
three parity cases give dimension M = delta(delta+1)/2 [+ m [+ tau]].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checkerboard import GridInstance, build_checkerboard, count_nodes
from .errors import ValidationError
from .monomials import (
    MonomialPoly,
    evaluate_coeffs,
    flatten_coeffs,
    graded_indices,
    poly_from_roots,
    recurrence_monomial_table,
    space_dim,
)
from .orthopoly import LONG

VANISH_RTOL = 1e-9
INDEPENDENCE_CUTOFF = 1e-10


@dataclass(frozen=True)
class QuotientBasis:
    """Linearly independent vanishing polynomials spanning the quotient."""

    elements: list[MonomialPoly]
    case: str
    M: int
    _coeff_hi: list = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.elements[0].degree if self.elements else 0


def quotient_case(n: int, sigma: int) -> str:
    if sigma % 2 == 1:
        return "I"
    return "II" if n % 2 == 1 else "III"


def quotient_dim(n: int, sigma: int, tau: int) -> int:
    """M for the given parity case; always (n+d+1)(n+d+2)/2 - N_tau."""
    delta = sigma // 2
    M = delta * (delta + 1) // 2
    if sigma % 2 == 0:
        if n % 2 == 1:
            M += (n + 1) // 2
        else:
            M += n // 2 + tau
    return M


def _v_coeff_squares(grid: GridInstance) -> list[np.ndarray]:
    """Extended-precision coefficient squares of the omega(x) x^j y^k family."""
    delta = grid.delta
    d = grid.n + delta
    out = []
    if delta == 0:
        return out
    omega = poly_from_roots(grid.xhi)
    for j in range(delta):
        for k in range(delta - j):
            C = np.zeros((d + 1, d + 1), dtype=LONG)
            C[j:j + len(omega), k] = omega
            out.append(C)
    return out


def build_V(grid: GridInstance) -> list[MonomialPoly]:
    """The delta(delta+1)/2 node-polynomial multiples; empty when delta = 0."""
    d = grid.n + grid.delta
    return [MonomialPoly(d, C.astype(float)) for C in _v_coeff_squares(grid)]


def _cross_coeff_squares(grid: GridInstance, tau: int) -> list[np.ndarray]:
    n, sigma, delta = grid.n, grid.sigma, grid.delta
    if sigma % 2 == 1:
        return []
    d = n + delta
    m = (n + 1) // 2 if n % 2 == 1 else n // 2
    jmax = m - 1 if n % 2 == 1 else m - 1 + tau
    if jmax < 0:
        return []
    Tx = recurrence_monomial_table(grid.xcoeffs, n)
    Ty = recurrence_monomial_table(grid.ycoeffs, n + sigma)
    sign = LONG(-1.0 if tau == 1 else 1.0)
    out = []
    for j in range(jmax + 1):
        C = np.zeros((d + 1, d + 1), dtype=LONG)
        C[: n + 1, : d + 1] += np.outer(Tx[n - j, : n + 1], Ty[j + delta, : d + 1])
        C[: n + 1, : d + 1] -= sign * np.outer(Tx[j, : n + 1], Ty[n + delta - j, : d + 1])
        out.append(C)
    return out


def _vanish_scale(C: np.ndarray, rx: float, ry: float) -> float:
    """Bound on |poly| over |x| <= rx, |y| <= ry; reference for residuals."""
    d = C.shape[0] - 1
    px = rx ** np.arange(d + 1)
    py = ry ** np.arange(d + 1)
    return float(px @ np.abs(C.astype(float)) @ py)


def build_Q(grid: GridInstance, tau: int) -> QuotientBasis:
    """Quotient basis for S_tau; verifies vanishing and independence."""
    if tau not in (0, 1):
        raise ValidationError("tau must be 0 or 1")
    n, sigma, delta = grid.n, grid.sigma, grid.delta
    d = n + delta
    case = quotient_case(n, sigma)
    squares = _v_coeff_squares(grid) + _cross_coeff_squares(grid, tau)
    M = quotient_dim(n, sigma, tau)
    if len(squares) != M:
        raise ValidationError(
            f"constructed {len(squares)} elements, expected M = {M}"
        )

    cset = build_checkerboard(grid, tau)
    xs = grid.xhi[cset.rs]
    ys = grid.yhi[cset.us]
    rx = float(np.max(np.abs(grid.xhi))) if len(grid.xhi) else 1.0
    ry = float(np.max(np.abs(grid.yhi))) if len(grid.yhi) else 1.0
    normalized = []
    for C in squares:
        top = np.max(np.abs(C.astype(float)))
        Cn = C / LONG(top)
        if cset.count:
            resid = float(np.max(np.abs(evaluate_coeffs(Cn, xs, ys))))
            scale = max(1.0, _vanish_scale(Cn, rx, ry))
            if resid > VANISH_RTOL * scale:
                raise ValidationError(
                    f"quotient element fails to vanish on S_{tau}: "
                    f"residual {resid:.3e} against scale {scale:.3e}"
                )
        normalized.append(Cn)

    if normalized:
        rows = np.array([flatten_coeffs(C.astype(float), d) for C in normalized])
        sv = np.linalg.svd(rows, compute_uv=False)
        indep_rank = int(np.sum(sv > INDEPENDENCE_CUTOFF * sv[0]))
        if indep_rank != M:
            raise ValidationError(
                f"quotient elements are not independent: rank {indep_rank} != {M}"
            )

    # sanity: dimension bookkeeping against the polynomial space
    assert M + count_nodes(n, sigma, tau) == space_dim(d)
    elements = [MonomialPoly(d, C.astype(float)) for C in normalized]
    return QuotientBasis(elements, case, M, normalized)
