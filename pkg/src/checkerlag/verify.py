"""Numerical verification suite: Vandermonde rank, null space versus the
vanishing basis, and an independent least-squares Lagrange oracle.

Rank decisions use singular values with the relative cutoff 1e-10.  Nodes
are affinely mapped to [-1, 1] per axis before any Vandermonde matrix is
formed, and the null-space basis and oracle columns are polished by
iterative refinement with extended-precision residuals; without both, the
rank and span decisions are at the mercy of monomial conditioning.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .checkerboard import CheckerboardSet, GridInstance, build_checkerboard
from .errors import (
    DimensionMismatchError,
    RankDeficiencyError,
    SpanMismatchError,
    ValidationError,
)
from .lagrange import delta_error_for_points, max_delta_error
from .monomials import (
    MonomialPoly,
    compose_affine_coeffs,
    flatten_coeffs,
    graded_indices,
    recurrence_monomial_table,
    space_dim,
    unflatten_coeffs,
)
from .orthopoly import LONG, eval_sequence
from .vanishing import QuotientBasis, build_Q

RANK_CUTOFF = 1e-10
REFINE_STEPS = 3
DELTA_TOL = 1e-9


def vandermonde(setpoints: CheckerboardSet, d: int) -> np.ndarray:
    """Rows are nodes, columns the monomials x^j y^k in graded order."""
    if d < 0:
        raise ValidationError("degree must be nonnegative")
    return _vandermonde_from_xy(setpoints.xs.astype(float),
                                setpoints.ys.astype(float), d).astype(float)


def _vandermonde_from_xy(xs, ys, d: int) -> np.ndarray:
    xs = np.asarray(xs)
    ys = np.asarray(ys)
    dtype = np.result_type(xs.dtype, ys.dtype)
    P = len(xs)
    XP = np.ones((P, d + 1), dtype=dtype)
    YP = np.ones((P, d + 1), dtype=dtype)
    for j in range(1, d + 1):
        XP[:, j] = XP[:, j - 1] * xs
        YP[:, j] = YP[:, j - 1] * ys
    cols = [XP[:, j] * YP[:, k] for (j, k) in graded_indices(d)]
    return np.stack(cols, axis=1)


def rank(matrix: np.ndarray, rel_cutoff: float = RANK_CUTOFF) -> int:
    """Count of singular values above rel_cutoff times the largest."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return 0
    if not np.all(np.isfinite(matrix)):
        raise ValidationError("matrix entries must be finite")
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rel_cutoff * sv[0]))


# -- scaled frame ------------------------------------------------------------

@dataclass(frozen=True)
class _Frame:
    """Checkerboard set in per-axis coordinates scaled onto [-1, 1]."""

    grid: GridInstance
    tau: int
    cset: CheckerboardSet
    d: int
    ax: float
    bx: float
    ay: float
    by: float
    xs: np.ndarray          # scaled node x, extended precision
    ys: np.ndarray
    V_hi: np.ndarray        # scaled Vandermonde, extended precision
    U: np.ndarray           # double SVD factors of V
    S: np.ndarray
    Wh: np.ndarray
    rank: int


def _axis_map(nodes_hi: np.ndarray) -> tuple[float, float]:
    """alpha, beta with node = alpha * scaled + beta mapping span onto [-1, 1]."""
    lo, hi = float(nodes_hi[-1]), float(nodes_hi[0])
    if hi == lo:
        return 1.0, lo
    return (hi - lo) / 2.0, (hi + lo) / 2.0


def _frame(grid: GridInstance, tau: int, d: int | None = None,
           cset: CheckerboardSet | None = None) -> _Frame:
    if d is None:
        d = grid.n + grid.delta
    if cset is None:
        cset = build_checkerboard(grid, tau)
        # a set built here inherits the extended-precision node coordinates
        xs_src = grid.xhi[cset.rs]
        ys_src = grid.yhi[cset.us]
    else:
        xs_src = cset.xs.astype(LONG)
        ys_src = cset.ys.astype(LONG)
    ax, bx = _axis_map(grid.xhi)
    ay, by = _axis_map(grid.yhi)
    xs = (xs_src - LONG(bx)) / LONG(ax)
    ys = (ys_src - LONG(by)) / LONG(ay)
    V_hi = _vandermonde_from_xy(xs, ys, d)
    V = V_hi.astype(float)
    U, S, Wh = np.linalg.svd(V)
    r = int(np.sum(S > RANK_CUTOFF * S[0])) if S.size and S[0] > 0 else 0
    return _Frame(grid, tau, cset, d, ax, bx, ay, by, xs, ys, V_hi, U, S, Wh, r)


def _frame_for_set(grid: GridInstance, cset: CheckerboardSet, d: int) -> _Frame:
    return _frame(grid, cset.tau, d, cset)


def _refined_nullspace(fr: _Frame) -> np.ndarray:
    """Orthonormal rows spanning the null space, refined in extended precision.

    The double SVD null vectors are contaminated at eps / gap when the
    smallest retained singular value is close to the cutoff; a few
    correction steps against the extended-precision matrix restore them.
    """
    D = fr.V_hi.shape[1]
    r = fr.rank
    if r == D:
        return np.zeros((0, D))
    Z = fr.Wh[r:].T.astype(LONG)          # D x (D - r)
    Ur = fr.U[:, :r].astype(LONG)
    corr = (fr.Wh[:r].T / fr.S[:r]).astype(LONG)   # D x r
    for _ in range(REFINE_STEPS):
        Z = Z - corr @ (Ur.T @ (fr.V_hi @ Z))
        for i in range(Z.shape[1]):       # modified Gram-Schmidt
            for j in range(i):
                Z[:, i] -= (Z[:, j] @ Z[:, i]) * Z[:, j]
            Z[:, i] /= np.sqrt(Z[:, i] @ Z[:, i])
    return Z.T.astype(float)


def _q_rows_scaled(fr: _Frame, qbasis: QuotientBasis) -> np.ndarray:
    """Unit-norm flattened coefficient rows of Q in the scaled coordinates."""
    rows = []
    for C in qbasis._coeff_hi:
        Cs = compose_affine_coeffs(C, fr.ax, fr.bx, fr.ay, fr.by)
        v = flatten_coeffs(Cs, fr.d)
        nv = np.sqrt(np.sum(v * v))
        rows.append((v / nv).astype(float))
    if not rows:
        return np.zeros((0, space_dim(fr.d)))
    return np.array(rows)


def _stack_rank(rows: np.ndarray) -> int:
    if rows.size == 0:
        return 0
    sv = np.linalg.svd(rows, compute_uv=False)
    return int(np.sum(sv > RANK_CUTOFF * max(float(sv[0]), 1.0)))


@dataclass(frozen=True)
class NullspaceReport:
    N_tau: int
    rank: int
    M: int
    nullspace_dim: int
    combined_rank: int
    span_equal: bool


def nullspace_equals_Q(grid: GridInstance, tau: int, *,
                       strict: bool = True,
                       qbasis: QuotientBasis | None = None,
                       cset: CheckerboardSet | None = None) -> NullspaceReport:
    """Compare the Vandermonde null space with span(Q).

    With strict=True a dimension disagreement raises DimensionMismatchError
    and a span disagreement raises SpanMismatchError; otherwise the report
    carries the outcome.  An explicit point set overrides the grid's own
    checkerboard set (used to probe corrupted data).
    """
    if qbasis is None:
        qbasis = build_Q(grid, tau)
    fr = _frame(grid, tau, cset=cset)
    ns = _refined_nullspace(fr)
    qrows = _q_rows_scaled(fr, qbasis)
    combined = np.vstack([ns, qrows]) if qrows.size else ns
    crank = _stack_rank(combined)
    dim_ok = ns.shape[0] == qbasis.M
    span_ok = dim_ok and crank == qbasis.M
    report = NullspaceReport(fr.cset.count, fr.rank, qbasis.M,
                             ns.shape[0], crank, span_ok)
    if strict:
        if not dim_ok:
            raise DimensionMismatchError(
                f"null space dimension {ns.shape[0]} != M = {qbasis.M}"
            )
        if not span_ok:
            raise SpanMismatchError(
                f"combined rank {crank} exceeds M = {qbasis.M}"
            )
    return report


# -- least-squares oracle ----------------------------------------------------

def _refined_lstsq(fr: _Frame) -> np.ndarray:
    """Minimum-norm solution columns of V L = I, refined; shape (D, N)."""
    N = fr.V_hi.shape[0]
    if fr.rank < N:
        raise RankDeficiencyError(
            f"Vandermonde rank {fr.rank} below node count {N}"
        )
    Ur = fr.U[:, :fr.rank].astype(LONG)
    corr = (fr.Wh[:fr.rank].T / fr.S[:fr.rank]).astype(LONG)  # D x r
    L = corr @ Ur.T                   # pinv(V), D x N
    I = np.eye(N, dtype=LONG)
    for _ in range(REFINE_STEPS):
        L = L + corr @ (Ur.T @ (I - fr.V_hi @ L))
    return L


def oracle_lagrange(setpoints: CheckerboardSet, d: int,
                    grid: GridInstance | None = None) -> list[MonomialPoly]:
    """Least-squares Lagrange basis on the set, one element per node.

    Solved on nodes scaled to [-1, 1]; the returned polynomials are mapped
    back to the original coordinates.  Raises RankDeficiencyError when the
    scaled Vandermonde has rank below the node count.
    """
    if grid is not None:
        fr = _frame_for_set(grid, setpoints, d)
    else:
        fr = _plain_frame(setpoints, d)
    L = _refined_lstsq(fr)
    out = []
    inv_ax, inv_bx = 1.0 / fr.ax, -fr.bx / fr.ax
    inv_ay, inv_by = 1.0 / fr.ay, -fr.by / fr.ay
    for i in range(fr.cset.count):
        C = unflatten_coeffs(L[:, i], d, dtype=LONG)
        Craw = compose_affine_coeffs(C, inv_ax, inv_bx, inv_ay, inv_by)
        out.append(MonomialPoly(d, Craw.astype(float)))
    return out


def _plain_frame(cset: CheckerboardSet, d: int) -> _Frame:
    """Frame for a bare point set (no grid carried): scale from the points."""
    xs = cset.xs.astype(LONG)
    ys = cset.ys.astype(LONG)
    ax, bx = _axis_map(np.sort(xs)[::-1])
    ay, by = _axis_map(np.sort(ys)[::-1])
    xs = (xs - LONG(bx)) / LONG(ax)
    ys = (ys - LONG(by)) / LONG(ay)
    V_hi = _vandermonde_from_xy(xs, ys, d)
    V = V_hi.astype(float)
    U, S, Wh = np.linalg.svd(V)
    r = int(np.sum(S > RANK_CUTOFF * S[0])) if S.size and S[0] > 0 else 0
    return _Frame(None, cset.tau, cset, d, ax, bx, ay, by, xs, ys, V_hi, U, S, Wh, r)


# -- closed-form basis expanded to monomials ---------------------------------

def monomial_coeffs(grid: GridInstance, s: int, v: int,
                    degree: int | None = None) -> MonomialPoly:
    """Monomial expansion of the unnormalized basis element G anchored at (s, v).

    The optional degree widens the coefficient square so that the degree
    bound itself can be inspected; the defaulted value n + delta is exact.
    """
    C = _g_coeff_square(grid, s, v, degree)
    return MonomialPoly(C.shape[0] - 1, C.astype(float))


def _g_coeff_square(grid: GridInstance, s: int, v: int,
                    degree: int | None = None) -> np.ndarray:
    n, sigma, delta = grid.n, grid.sigma, grid.delta
    d = n + delta if degree is None else degree
    if not (0 <= s <= n and 0 <= v <= n + sigma):
        raise ValidationError(f"anchor indices ({s}, {v}) outside the grid")
    C = np.zeros((d + 1, d + 1), dtype=LONG)
    if n == 0 and sigma == 0:
        C[0, 0] = 1.0
        return C
    xs, yv = grid.xhi[s], grid.yhi[v]
    ps = eval_sequence(grid.xcoeffs, np.asarray([xs], dtype=LONG), n)[:, 0]
    qv = eval_sequence(grid.ycoeffs, np.asarray([yv], dtype=LONG), n + sigma)[:, 0]
    Tx = recurrence_monomial_table(grid.xcoeffs, n)
    Ty = recurrence_monomial_table(grid.ycoeffs, n + sigma)
    c = grid.ycoeffs.a.astype(LONG)
    c_ext = np.concatenate([c, c[:1]]) if len(c) else c
    # weighted cumulative rows: W[t] = sum_{k<=t} c_k q_k(y_v) (coeffs of q_k)
    K = n + sigma
    W = np.zeros((K + 1, K + 1), dtype=LONG)
    run = np.zeros(K + 1, dtype=LONG)
    for k in range(K + 1):
        run = run + c_ext[k] * qv[k] * Ty[k]
        W[k] = run

    def wrow(cap: int) -> np.ndarray:
        out = np.zeros(d + 1, dtype=LONG)
        if cap >= 0:
            take = min(K + 1, d + 1)
            out[:take] = W[cap][:take]
        return out

    a = grid.xcoeffs.a.astype(LONG)
    for j in range(n):
        wv = wrow(n - j + delta) + wrow(n - j + sigma - delta - 1)
        C[: n + 1] += a[j] * ps[j] * np.outer(Tx[j, : n + 1], wv)
    a0 = a[0] if n >= 1 else LONG(1.0)
    wv = wrow(sigma - delta - 1) + wrow(delta)
    C[: n + 1] += a0 * ps[n] * np.outer(Tx[n, : n + 1], wv)
    return C


def _basis_rows_scaled(fr: _Frame) -> tuple[np.ndarray, np.ndarray]:
    """Flattened scaled-coordinate rows of L per anchor, plus their norms."""
    rows = np.empty((fr.cset.count, space_dim(fr.d)), dtype=LONG)
    for i, (r, u) in enumerate(zip(fr.cset.rs, fr.cset.us)):
        C = _g_coeff_square(fr.grid, int(r), int(u))
        Cs = compose_affine_coeffs(C, fr.ax, fr.bx, fr.ay, fr.by)
        g0 = evaluate_coeffs_hi(Cs, fr.xs[i], fr.ys[i])
        if not g0 > 0:
            raise ValidationError("non-positive normalizer in basis expansion")
        rows[i] = flatten_coeffs(Cs, fr.d) / g0
    norms = np.sqrt(np.sum(rows.astype(float) ** 2, axis=1))
    return rows, norms


def evaluate_coeffs_hi(C: np.ndarray, x, y):
    d = C.shape[0] - 1
    xp = np.ones(d + 1, dtype=LONG)
    yp = np.ones(d + 1, dtype=LONG)
    for j in range(1, d + 1):
        xp[j] = xp[j - 1] * x
        yp[j] = yp[j - 1] * y
    return xp @ C @ yp


@dataclass(frozen=True)
class UniquenessReport:
    N_tau: int
    M: int
    combined_rank: int
    max_diff_rel: float
    in_span: bool


def basis_matches_oracle_mod_Q(grid: GridInstance, tau: int, *,
                               qbasis: QuotientBasis | None = None) -> UniquenessReport:
    """Check that oracle basis minus closed-form basis lies in span(Q).

    Differences are taken in scaled coordinates and entered in units of the
    corresponding basis column norm, so a numerically zero difference does
    not masquerade as an extra span direction.
    """
    if qbasis is None:
        qbasis = build_Q(grid, tau)
    fr = _frame(grid, tau)
    Lcols = _refined_lstsq(fr)                       # D x N
    grows, gnorms = _basis_rows_scaled(fr)           # N x D
    qrows = _q_rows_scaled(fr, qbasis)
    diffs = []
    max_rel = 0.0
    for i in range(fr.cset.count):
        diff = Lcols[:, i] - grows[i]
        scale = max(gnorms[i], float(np.sqrt(np.sum(Lcols[:, i].astype(float) ** 2))))
        row = (diff / LONG(scale)).astype(float)
        max_rel = max(max_rel, float(np.sqrt(np.sum(row * row))))
        diffs.append(row)
    stack = np.vstack([qrows, np.array(diffs)]) if qrows.size else np.array(diffs)
    crank = _stack_rank(stack)
    return UniquenessReport(fr.cset.count, qbasis.M, crank, max_rel,
                            crank == qbasis.M)


# -- whole-instance report ---------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    n: int
    sigma: int
    tau: int
    N_tau: int
    rank: int
    M: int
    nullspace_dim: int
    span_equal: bool
    max_delta_error: float
    oracle_in_span: bool

    @property
    def ok(self) -> bool:
        return (self.rank == self.N_tau and self.nullspace_dim == self.M
                and self.span_equal and self.oracle_in_span
                and self.max_delta_error < DELTA_TOL)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def verify_grid(grid: GridInstance, tau: int,
                cset: CheckerboardSet | None = None) -> VerifyReport:
    """Rank, null-space/span, oracle-uniqueness and delta checks on one grid."""
    qbasis = build_Q(grid, tau)
    ns = nullspace_equals_Q(grid, tau, strict=False, qbasis=qbasis, cset=cset)
    if cset is None:
        delta_err = max_delta_error(grid, tau)
    else:
        delta_err = delta_error_for_points(grid, cset.xs, cset.ys)
    if ns.rank == ns.N_tau:
        oracle_ok = basis_matches_oracle_mod_Q(grid, tau, qbasis=qbasis).in_span
    else:
        oracle_ok = False
    return VerifyReport(grid.n, grid.sigma, tau, ns.N_tau, ns.rank,
                        ns.M, ns.nullspace_dim, ns.span_equal, delta_err,
                        oracle_ok)
