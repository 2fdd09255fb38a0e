"""Bijection between coefficient pairs and strictly decreasing node sequences.

Forward direction (coefficients to nodes): for n = 2m-1 the nodes are the
merged zeros of p_m - p_{m-1} (even positions) and p_m + p_{m-1} (odd
positions); for n = 2m the even positions hold the zeros of
p_{m+1} - p_{m-1} and the odd positions the zeros of p_m.  The output
satisfies the alternation identity p_{n-k}(x_j) = (-1)^j p_k(x_j).

Inverse direction (nodes to coefficients): damped Newton on the free
coefficients with a finite-difference Jacobian, started from an affine
image of a Chebyshev-like reference family.  For even n the spare degree
of freedom is removed by the normalization a_0 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, RootFindingError, ValidationError
from .orthopoly import (
    LONG,
    ComboSpec,
    RecurrenceCoeffs,
    _combo_zeros_hi,
    eval_sequence,
)

# Minimum node separation on load, relative to the span.
MIN_GAP_RTOL = 1e-12

# Alternation postcondition tolerance, relative to the largest sequence
# value at the node being checked.
ALTERNATION_RTOL = 1e-9

NEWTON_MAX_ITER = 100
NEWTON_MAX_HALVINGS = 20
NEWTON_FD_STEP = 1e-6


@dataclass(frozen=True)
class NodeSequence:
    """Strictly decreasing abscissas x_0 > x_1 > ... > x_n."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or len(nodes) == 0:
            raise ValidationError("nodes must be a non-empty 1-d array")
        if not np.all(np.isfinite(nodes)):
            raise ValidationError("nodes must be finite")
        if len(nodes) > 1:
            span = nodes[0] - nodes[-1]
            gaps = -np.diff(nodes)
            if span <= 0 or np.any(gaps <= MIN_GAP_RTOL * span):
                raise ValidationError(
                    "nodes must be strictly decreasing with separation "
                    f"above {MIN_GAP_RTOL:g} of the span"
                )
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def span(self) -> float:
        return float(self.nodes[0] - self.nodes[-1]) if len(self) > 1 else 0.0


def _interleave(even_set: np.ndarray, odd_set: np.ndarray) -> np.ndarray:
    out = np.empty(len(even_set) + len(odd_set), dtype=even_set.dtype)
    out[0::2] = even_set
    out[1::2] = odd_set
    return out


def _nodes_hi(coeffs: RecurrenceCoeffs) -> np.ndarray:
    """Extended-precision node array for valid coefficients, unchecked."""
    n = coeffs.n
    if n < 1:
        raise ValidationError("node map needs n >= 1")
    if n % 2 == 1:
        m = (n + 1) // 2
        diff = _combo_zeros_hi(coeffs, ComboSpec("diff", m))
        sm = _combo_zeros_hi(coeffs, ComboSpec("sum", m))
        nodes = _interleave(diff, sm)
    else:
        m = n // 2
        wide = _combo_zeros_hi(coeffs, ComboSpec("wide_diff", m))
        poly = _combo_zeros_hi(coeffs, ComboSpec("poly", m))
        nodes = _interleave(wide, poly)
    if not np.all(np.diff(nodes) < 0):
        raise RootFindingError(
            "merged zero sets are not strictly decreasing; "
            "coefficients do not define a valid node sequence"
        )
    return nodes


def alternation_error(coeffs: RecurrenceCoeffs, nodes) -> float:
    """Worst relative residual of p_{n-k}(x_j) = (-1)^j p_k(x_j) over all j, k."""
    n = coeffs.n
    worst = 0.0
    for j, x in enumerate(np.asarray(nodes, dtype=LONG)):
        p = eval_sequence(coeffs, x, n)
        scale = max(1.0, float(np.max(np.abs(p))))
        sign = 1.0 if j % 2 == 0 else -1.0
        resid = np.max(np.abs(p[::-1] - sign * p))
        worst = max(worst, float(resid) / scale)
    return worst


def nodes_from_coeffs(coeffs: RecurrenceCoeffs) -> NodeSequence:
    """The unique strictly decreasing nodes satisfying the alternation identity."""
    nodes = _nodes_hi(coeffs)
    err = alternation_error(coeffs, nodes)
    if err > ALTERNATION_RTOL:
        raise RootFindingError(
            f"alternation residual {err:.3e} exceeds {ALTERNATION_RTOL:g}"
        )
    return NodeSequence(nodes.astype(float))


def gamma_rescale(coeffs: RecurrenceCoeffs, gamma: float) -> RecurrenceCoeffs:
    """Scale (a_k, b_k) by gamma for even k and by 1/gamma for odd k.

    Only even n admits this freedom; the rescaled coefficients produce the
    same node sequence.
    """
    if coeffs.n % 2 != 0:
        raise ValidationError("gamma rescaling applies to even n only")
    if not np.isfinite(gamma) or gamma <= 0:
        raise ValidationError("gamma must be positive")
    fac = np.where(np.arange(coeffs.n) % 2 == 0, gamma, 1.0 / gamma)
    return RecurrenceCoeffs(coeffs.a * fac, coeffs.b * fac)


# -- inverse map -------------------------------------------------------------

def _reference_coeffs(n: int) -> RecurrenceCoeffs:
    """Chebyshev-like start: a = (1, 2, .., 2) for even n, all 2 for odd n."""
    a = np.full(n, 2.0)
    if n % 2 == 0:
        a[0] = 1.0
    return RecurrenceCoeffs(a, np.zeros(n))


def _free_indices(n: int) -> tuple[list[int], list[int]]:
    """Free (a, b) indices once reflection and the even-n a_0 = 1 are imposed."""
    half = n // 2
    a_idx = list(range(half + 1)) if n % 2 == 1 else list(range(1, half + 1))
    b_idx = list(range(half + 1))
    return a_idx, b_idx


def _assemble(theta: np.ndarray, n: int) -> RecurrenceCoeffs:
    a_idx, b_idx = _free_indices(n)
    half = n // 2
    a_half = np.empty(half + 1)
    b_half = np.empty(half + 1)
    pos = 0
    if n % 2 == 0:
        a_half[0] = 1.0
    for i, k in enumerate(a_idx):
        a_half[k] = theta[pos + i]
    pos += len(a_idx)
    for i, k in enumerate(b_idx):
        b_half[k] = theta[pos + i]
    return RecurrenceCoeffs.from_half(a_half, b_half, n)


def _extract(coeffs: RecurrenceCoeffs) -> np.ndarray:
    a_idx, b_idx = _free_indices(coeffs.n)
    return np.concatenate([coeffs.a[a_idx], coeffs.b[b_idx]])


def _initial_guess(target: np.ndarray) -> RecurrenceCoeffs:
    """Affine image of the reference family matched to the target end nodes."""
    n = len(target) - 1
    ref = _reference_coeffs(n)
    ref_nodes = _nodes_hi(ref).astype(float)
    alpha = (target[0] - target[-1]) / (ref_nodes[0] - ref_nodes[-1])
    beta = target[0] - alpha * ref_nodes[0]
    a = ref.a / alpha
    b = ref.b - ref.a * beta / alpha
    guess = RecurrenceCoeffs(a, b)
    if n % 2 == 0:
        # restore a_0 = 1 without moving the nodes
        guess = gamma_rescale(guess, alpha)
    return guess


def _residual(theta: np.ndarray, n: int, target: np.ndarray) -> np.ndarray:
    coeffs = _assemble(theta, n)
    return _nodes_hi(coeffs).astype(float) - target


def coeffs_from_nodes(nodes: NodeSequence | np.ndarray) -> RecurrenceCoeffs:
    """Recover the coefficient pair whose node map reproduces the given nodes.

    For odd n the answer is unique; for even n the normalization a_0 = 1 is
    imposed.  Raises ConvergenceError if the damped Newton iteration stalls.
    """
    if not isinstance(nodes, NodeSequence):
        nodes = NodeSequence(np.asarray(nodes, dtype=float))
    target = nodes.nodes
    n = len(target) - 1
    if n < 1:
        raise ValidationError("inverse map needs at least two nodes")
    span = nodes.span
    tol = 1e-12 * max(1.0, span)
    accept = 1e-9 * span

    theta = _extract(_initial_guess(target))
    try:
        res = _residual(theta, n, target)
    except (RootFindingError, ValidationError) as exc:
        raise ConvergenceError(f"initial guess is not evaluable: {exc}") from exc
    norm = np.max(np.abs(res))

    for _ in range(NEWTON_MAX_ITER):
        if norm <= tol:
            break
        jac = _fd_jacobian(theta, n, target)
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian in inverse node map") from exc
        t = 1.0
        for _ in range(NEWTON_MAX_HALVINGS):
            trial = theta + t * step
            try:
                trial_res = _residual(trial, n, target)
            except (RootFindingError, ValidationError):
                t *= 0.5
                continue
            trial_norm = np.max(np.abs(trial_res))
            if trial_norm < norm:
                theta, res, norm = trial, trial_res, trial_norm
                break
            t *= 0.5
        else:
            break  # no productive step length

    if norm > accept:
        raise ConvergenceError(
            f"inverse node map stalled at residual {norm:.3e} "
            f"(acceptance {accept:.3e})"
        )
    try:
        return _assemble(theta, n)
    except ValidationError as exc:
        raise ConvergenceError(f"solution violates positivity: {exc}") from exc


def _fd_jacobian(theta: np.ndarray, n: int, target: np.ndarray) -> np.ndarray:
    """Central-difference Jacobian of the node residual, column by column.

    Falls back to a one-sided difference when a perturbed coefficient set
    is not evaluable (positivity lost, degenerate zero sets).
    """
    dim = len(theta)
    jac = np.empty((len(target), dim))
    base = None
    for i in range(dim):
        h = NEWTON_FD_STEP * max(1.0, abs(theta[i]))
        tp = theta.copy()
        tm = theta.copy()
        tp[i] += h
        tm[i] -= h
        try:
            jac[:, i] = (_residual(tp, n, target) - _residual(tm, n, target)) / (2 * h)
        except (RootFindingError, ValidationError):
            if base is None:
                base = _residual(theta, n, target)
            for t, sign in ((tp, 1.0), (tm, -1.0)):
                try:
                    jac[:, i] = sign * (_residual(t, n, target) - base) / h
                    break
                except (RootFindingError, ValidationError):
                    continue
            else:
                raise ConvergenceError(
                    "Jacobian column not evaluable near current iterate"
                ) from None
    return jac
