"""Univariate polynomial sequences p_0, p_1, ... defined by the recurrence

    p_0(x) = 1,   p_1(x) = a_0 x + b_0,
    p_{k+1}(x) = (a_k x + b_k) p_k(x) - p_{k-1}(x),

together with zero finding for p_m and for the combinations
p_m - p_{m-1}, p_m + p_{m-1} and p_{m+1} - p_{m-1} that drive the
coefficient-to-node map.

Zeros are computed as eigenvalues of (modified) symmetric tridiagonal
matrices and then polished by a few Newton steps carried out in extended
precision; see the docstring of :func:`combo_zeros`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import RootFindingError, ValidationError

LONG = np.longdouble

# Relative tolerance for the palindromic symmetry check on externally
# supplied coefficient arrays.  Internally generated sequences are exact.
REFLECTION_RTOL = 1e-12

_COMBO_KINDS = ("poly", "diff", "sum", "wide_diff")


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Coefficient pair (a_k, b_k), k = 0 .. n-1, defining p_0 .. p_n.

    Valid instances have a_k > 0 and palindromic symmetry
    a_k = a_{n-k}, b_k = b_{n-k} for 1 <= k <= n-1.
    """

    a: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return len(self.a)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.ndim != 1 or b.shape != a.shape:
            raise ValidationError("coefficient arrays must be 1-d and equal length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValidationError("coefficients must be finite")
        if np.any(a <= 0.0):
            raise ValidationError("all a_k must be positive")
        n = len(a)
        for arr, name in ((a, "a"), (b, "b")):
            scale = np.max(np.abs(arr)) if n else 0.0
            for k in range(1, n):
                if abs(arr[k] - arr[n - k]) > REFLECTION_RTOL * max(1.0, scale):
                    raise ValidationError(
                        f"reflection symmetry violated: {name}[{k}] != {name}[{n - k}]"
                    )
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_half(cls, a_half, b_half, n: int) -> "RecurrenceCoeffs":
        """Build a length-n pair from the free entries k <= n//2, mirrored exactly."""
        a_half = np.asarray(a_half, dtype=float)
        b_half = np.asarray(b_half, dtype=float)
        if len(a_half) != n // 2 + 1 or len(b_half) != n // 2 + 1:
            raise ValidationError("need exactly n//2 + 1 free entries per array")
        a = np.empty(n)
        b = np.empty(n)
        for k in range(n):
            k_free = min(k, n - k) if k > 0 else 0
            a[k] = a_half[k_free]
            b[k] = b_half[k_free]
        return cls(a, b)


def eval_sequence(coeffs: RecurrenceCoeffs, x, upto: int | None = None) -> np.ndarray:
    """Evaluate p_0(x) .. p_upto(x) by the forward recurrence.

    x may be a scalar or an array; the output has shape (upto+1,) + x.shape
    and the dtype of x (so extended-precision input stays extended).
    Index k of the result holds p_k(x); entry 0 is identically 1.
    """
    n = coeffs.n
    if upto is None:
        upto = n
    if not 0 <= upto <= n:
        raise ValidationError(f"upto must lie in [0, {n}], got {upto}")
    x = np.asarray(x)
    if not np.all(np.isfinite(np.asarray(x, dtype=float))):
        raise ValidationError("evaluation abscissa must be finite")
    dtype = x.dtype if x.dtype.kind == "f" else np.float64
    x = x.astype(dtype)
    a = coeffs.a.astype(dtype)
    b = coeffs.b.astype(dtype)
    p = np.empty((upto + 1,) + x.shape, dtype=dtype)
    p[0] = 1.0
    if upto >= 1:
        p[1] = a[0] * x + b[0]
    for k in range(1, upto):
        p[k + 1] = (a[k] * x + b[k]) * p[k] - p[k - 1]
    return p


def eval_sequence_with_deriv(coeffs: RecurrenceCoeffs, x, upto: int):
    """Return (p, dp): values and x-derivatives of p_0 .. p_upto at scalar x."""
    x = np.asarray(x)
    dtype = x.dtype if x.dtype.kind == "f" else np.float64
    x = x.astype(dtype)
    a = coeffs.a.astype(dtype)
    b = coeffs.b.astype(dtype)
    p = np.empty(upto + 1, dtype=dtype)
    dp = np.empty(upto + 1, dtype=dtype)
    p[0], dp[0] = 1.0, 0.0
    if upto >= 1:
        p[1], dp[1] = a[0] * x + b[0], a[0]
    for k in range(1, upto):
        t = a[k] * x + b[k]
        p[k + 1] = t * p[k] - p[k - 1]
        dp[k + 1] = a[k] * p[k] + t * dp[k] - dp[k - 1]
    return p, dp


@dataclass(frozen=True)
class ComboSpec:
    """Designates which zero set to compute.

    kind:
      "poly"      zeros of p_m            (m zeros)
      "diff"      zeros of p_m - p_{m-1}  (m zeros)
      "sum"       zeros of p_m + p_{m-1}  (m zeros)
      "wide_diff" zeros of p_{m+1} - p_{m-1}  (m+1 zeros)
    """

    kind: str
    m: int

    def __post_init__(self):
        if self.kind not in _COMBO_KINDS:
            raise ValidationError(f"unknown combo kind {self.kind!r}")
        if self.m < 1:
            raise ValidationError("m must be >= 1")


def _jacobi_parts(coeffs: RecurrenceCoeffs, size: int):
    """Diagonal and off-diagonal of the symmetric tridiagonal whose
    eigenvalues are the zeros of p_size (monic transform of the recurrence)."""
    a, b = coeffs.a, coeffs.b
    d = -b[:size] / a[:size]
    e = 1.0 / np.sqrt(a[1:size] * a[:size - 1])
    return d, e


def _eigvals_desc(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    if len(d) == 1:
        return d.copy()
    return eigh_tridiagonal(d, e, eigvals_only=True)[::-1]


def _combo_fun(coeffs: RecurrenceCoeffs, spec: ComboSpec):
    """Value/derivative callable for the designated combination at scalar x."""
    m = spec.m
    if spec.kind == "poly":
        def f(x):
            p, dp = eval_sequence_with_deriv(coeffs, x, m)
            return p[m], dp[m]
    elif spec.kind in ("diff", "sum"):
        s = -1.0 if spec.kind == "diff" else 1.0
        def f(x):
            p, dp = eval_sequence_with_deriv(coeffs, x, m)
            return p[m] + s * p[m - 1], dp[m] + s * dp[m - 1]
    else:
        def f(x):
            p, dp = eval_sequence_with_deriv(coeffs, x, m + 1)
            return p[m + 1] - p[m - 1], dp[m + 1] - dp[m - 1]
    return f


def _polish(coeffs: RecurrenceCoeffs, spec: ComboSpec, roots: np.ndarray,
            steps: int = 3) -> np.ndarray:
    """Newton-polish eigenvalue estimates in extended precision."""
    roots = roots.astype(LONG)
    f = _combo_fun(coeffs, spec)
    span = float(roots[0] - roots[-1]) if len(roots) > 1 else 1.0
    cap = 1e-6 * max(1.0, span)
    for _ in range(steps):
        for i in range(len(roots)):
            val, der = f(roots[i])
            if der == 0:
                continue
            step = val / der
            if abs(step) > cap:
                continue
            roots[i] = roots[i] - step
    return roots


def _combo_zeros_hi(coeffs: RecurrenceCoeffs, spec: ComboSpec) -> np.ndarray:
    """Strictly decreasing zeros of the designated combination, extended precision.

    The zeros of p_m are the eigenvalues of the m-by-m symmetric tridiagonal
    matrix with diagonal -b_k/a_k and off-diagonal 1/sqrt(a_k a_{k-1}).
    The combinations reduce to the same eigenproblem with the last entry
    modified: p_m -+ p_{m-1} shifts the last diagonal by +-1/a_{m-1}, and
    p_{m+1} - p_{m-1} scales the last off-diagonal by sqrt(2).  All matrices
    are real symmetric because a_k > 0, so the zeros are real and the
    eigensolve is backward stable; Newton steps in extended precision then
    push each zero well below the 1e-13 localization tolerance.
    """
    n, m = coeffs.n, spec.m
    if spec.kind == "wide_diff":
        if m > n - 1:
            raise ValidationError(f"wide_diff needs m <= n-1, got m={m}, n={n}")
        d, e = _jacobi_parts(coeffs, m + 1)
        e = e.copy()
        e[m - 1] *= np.sqrt(2.0)
        ev = _eigvals_desc(d, e)
    else:
        if m > n:
            raise ValidationError(f"combo needs m <= n, got m={m}, n={n}")
        d, e = _jacobi_parts(coeffs, m)
        if spec.kind != "poly":
            d = d.copy()
            d[m - 1] += (1.0 if spec.kind == "diff" else -1.0) / coeffs.a[m - 1]
        ev = _eigvals_desc(d, e)
    roots = _polish(coeffs, spec, ev)
    if not np.all(np.isfinite(roots.astype(float))):
        raise RootFindingError("non-finite zero produced")
    if len(roots) > 1 and not np.all(np.diff(roots) < 0):
        raise RootFindingError(
            f"zeros of {spec.kind} combination are not strictly decreasing "
            "(coefficients are at or beyond a degeneracy)"
        )
    return roots


def combo_zeros(coeffs: RecurrenceCoeffs, spec: ComboSpec) -> np.ndarray:
    """All real zeros of the designated combination, strictly decreasing."""
    return _combo_zeros_hi(coeffs, spec).astype(float)
