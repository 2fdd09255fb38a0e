"""Dense bivariate polynomials over the monomials x^j y^k, j + k <= d.

The flattened coefficient order is graded by the y power first:
1, x, ..., x^d, y, xy, ..., x^{d-1}y, ..., y^d.  This is also the column
order of the bivariate Vandermonde matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ValidationError
from .orthopoly import LONG, RecurrenceCoeffs


def graded_indices(d: int) -> list[tuple[int, int]]:
    """(j, k) exponent pairs in flattened column order."""
    return [(j, k) for k in range(d + 1) for j in range(d + 1 - k)]


def space_dim(d: int) -> int:
    return (d + 1) * (d + 2) // 2


@dataclass(frozen=True)
class MonomialPoly:
    """Coefficient square C with C[j, k] multiplying x^j y^k."""

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        C = np.asarray(self.coeffs, dtype=float)
        d = self.degree
        if C.shape != (d + 1, d + 1):
            raise ValidationError("coefficient array must be (degree+1) square")
        C.setflags(write=False)
        object.__setattr__(self, "coeffs", C)

    @classmethod
    def from_vector(cls, vec, degree: int) -> "MonomialPoly":
        vec = np.asarray(vec, dtype=float)
        idx = graded_indices(degree)
        if len(vec) != len(idx):
            raise ValidationError(
                f"need {len(idx)} coefficients for degree {degree}, got {len(vec)}"
            )
        C = np.zeros((degree + 1, degree + 1))
        for (j, k), c in zip(idx, vec):
            C[j, k] = c
        return cls(degree, C)

    def to_vector(self) -> np.ndarray:
        return flatten_coeffs(self.coeffs, self.degree)

    def __call__(self, x, y) -> np.ndarray:
        return evaluate_coeffs(self.coeffs, x, y)

    @property
    def max_abs_coeff(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def compose_affine(self, ax: float, bx: float, ay: float, by: float) -> "MonomialPoly":
        """Polynomial in (X, Y) after substituting x = ax X + bx, y = ay Y + by."""
        C = compose_affine_coeffs(self.coeffs.astype(LONG), ax, bx, ay, by)
        return MonomialPoly(self.degree, C.astype(float))


def flatten_coeffs(C: np.ndarray, d: int) -> np.ndarray:
    return np.concatenate([C[: d + 1 - k, k] for k in range(d + 1)])


def unflatten_coeffs(vec: np.ndarray, d: int, dtype=float) -> np.ndarray:
    C = np.zeros((d + 1, d + 1), dtype=dtype)
    pos = 0
    for k in range(d + 1):
        size = d + 1 - k
        C[:size, k] = vec[pos:pos + size]
        pos += size
    return C


def evaluate_coeffs(C: np.ndarray, x, y) -> np.ndarray:
    """Sum C[j,k] x^j y^k, vectorized over matching x, y arrays."""
    x = np.atleast_1d(np.asarray(x))
    y = np.atleast_1d(np.asarray(y))
    dtype = np.result_type(C.dtype, x.dtype, y.dtype)
    d = C.shape[0] - 1
    XP = np.ones((len(x), d + 1), dtype=dtype)
    YP = np.ones((len(y), d + 1), dtype=dtype)
    for j in range(1, d + 1):
        XP[:, j] = XP[:, j - 1] * x
        YP[:, j] = YP[:, j - 1] * y
    return np.einsum("pj,jk,pk->p", XP, C.astype(dtype), YP)


def affine_power_matrix(d: int, alpha, beta, dtype=LONG) -> np.ndarray:
    """T with x^j = sum_{j'} T[j, j'] X^{j'} under x = alpha X + beta."""
    T = np.zeros((d + 1, d + 1), dtype=dtype)
    alpha = dtype(alpha)
    beta = dtype(beta)
    for j in range(d + 1):
        for jp in range(j + 1):
            T[j, jp] = comb(j, jp) * alpha ** jp * beta ** (j - jp)
    return T


def compose_affine_coeffs(C: np.ndarray, ax, bx, ay, by) -> np.ndarray:
    """Coefficient square of C after x = ax X + bx, y = ay Y + by."""
    d = C.shape[0] - 1
    Tx = affine_power_matrix(d, ax, bx, C.dtype.type)
    Ty = affine_power_matrix(d, ay, by, C.dtype.type)
    return Tx.T @ C @ Ty


def recurrence_monomial_table(coeffs: RecurrenceCoeffs, upto: int,
                              dtype=LONG) -> np.ndarray:
    """Rows 0..upto hold the monomial coefficients of p_0 .. p_upto.

    Computed by running the three-term recurrence on coefficient vectors.
    """
    if not 0 <= upto <= coeffs.n:
        raise ValidationError(f"upto must lie in [0, {coeffs.n}]")
    a = coeffs.a.astype(dtype)
    b = coeffs.b.astype(dtype)
    T = np.zeros((upto + 1, upto + 1), dtype=dtype)
    T[0, 0] = 1.0
    if upto >= 1:
        T[1, 0], T[1, 1] = b[0], a[0]
    for k in range(1, upto):
        T[k + 1, 1:] += a[k] * T[k, :-1]
        T[k + 1, :] += b[k] * T[k, :]
        T[k + 1, :] -= T[k - 1, :]
    return T


def poly_from_roots(roots: np.ndarray, dtype=LONG) -> np.ndarray:
    """Ascending coefficients of prod (x - r) over the given roots."""
    c = np.ones(1, dtype=dtype)
    for r in np.asarray(roots, dtype=dtype):
        nxt = np.zeros(len(c) + 1, dtype=dtype)
        nxt[1:] = c
        nxt[:-1] -= r * c
        c = nxt
    return c
