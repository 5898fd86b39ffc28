"""Gaussian kernel interpolation without a polynomial part.

The Gaussian ``h(x) = exp(-beta |x|^2)`` is strictly positive definite, so
the interpolant is the pure kernel expansion ``s(x) = sum_j c_j h(x - x_j)``
with ``c`` solving the Gram system ``A c = f``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
import scipy.linalg
from scipy.spatial.distance import cdist, pdist

from .errors import ConditioningError, GeometryError

_DUPLICATE_TOL = 1e-12
_PIVOT_TOL = 1e-14
# digits for the fallback factorization; pivots are then tested against 10**-(dps-5)
EXTENDED_DPS = 50


@dataclass(frozen=True)
class GaussianKernel:
    beta: float
    cpd_order: int = field(default=0, init=False)

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")

    def __call__(self, r2):
        return kernel_eval(self, r2)


def kernel_eval(k: GaussianKernel, r2):
    """``exp(-beta * r2)`` for squared distance(s) ``r2 >= 0``."""
    r2 = np.asarray(r2, dtype=float)
    if np.any(r2 < 0):
        raise ValueError("squared distance must be nonnegative")
    out = np.exp(-k.beta * r2)
    return float(out) if out.ndim == 0 else out


def _as_points(pts) -> np.ndarray:
    p = np.asarray(pts, dtype=float)
    if p.ndim == 1:
        p = p[:, None]
    return p


def _check_distinct(pts: np.ndarray):
    if len(pts) < 2:
        return
    d = pdist(pts)
    scale = d.max()
    if d.min() <= _DUPLICATE_TOL * scale:
        raise GeometryError("duplicate centers (pairwise distance below tolerance)")


def gram_matrix(k: GaussianKernel, centers) -> np.ndarray:
    pts = _as_points(centers)
    if len(pts) == 0:
        raise GeometryError("need at least one center")
    _check_distinct(pts)
    a = np.exp(-k.beta * cdist(pts, pts, "sqeuclidean"))
    np.fill_diagonal(a, 1.0)
    return a


@dataclass(frozen=True)
class SolveDiagnostics:
    n_centers: int
    condition_2norm: float
    residual_max: float
    regularization_used: bool = False
    precision: str = "double"


@dataclass(frozen=True, eq=False)
class Interpolant:
    kernel: GaussianKernel
    centers: np.ndarray
    coefficients: np.ndarray
    diagnostics: SolveDiagnostics
    # exact-ish coefficients kept when the solve needed extended precision
    mp_coefficients: tuple | None = None

    def __call__(self, x):
        return evaluate_interpolant(self, x)


def _condition(a: np.ndarray) -> float:
    w = np.linalg.eigvalsh(a)
    if w[0] <= 0:
        return math.inf
    return float(w[-1] / w[0])


def _mp_context():
    ctx = mpmath.MPContext()
    ctx.dps = EXTENDED_DPS
    return ctx


def _mp_gram(ctx, beta, pts: np.ndarray, other: np.ndarray | None = None):
    other = pts if other is None else other
    b = ctx.mpf(beta)
    p = [[ctx.mpf(float(v)) for v in row] for row in pts]
    q = p if other is pts else [[ctx.mpf(float(v)) for v in row] for row in other]
    m = ctx.matrix(len(p), len(q))
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            m[i, j] = ctx.exp(-b * ctx.fsum((u - v) ** 2 for u, v in zip(pi, qj)))
    return m


def _solve_double(a, f, cond):
    try:
        chol = scipy.linalg.cho_factor(a, lower=True)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(
            f"Gram matrix not positive definite (condition ~ {cond:.3e})", condition=cond
        ) from exc
    if np.diag(chol[0]).min() ** 2 < _PIVOT_TOL * np.trace(a):
        raise ConditioningError(
            f"Cholesky pivot below tolerance (condition ~ {cond:.3e})", condition=cond
        )
    c = scipy.linalg.cho_solve(chol, f)
    return c, float(np.abs(a @ c - f).max())


def _solve_extended(beta, pts, f, cond):
    ctx = _mp_context()
    a = _mp_gram(ctx, beta, pts)
    try:
        low = ctx.cholesky(a)
    except ValueError as exc:
        raise ConditioningError(
            f"Gram matrix not positive definite at {EXTENDED_DPS} digits "
            f"(condition ~ {cond:.3e})",
            condition=cond,
        ) from exc
    tol = ctx.mpf(10) ** (5 - EXTENDED_DPS) * len(pts)
    if min(low[i, i] ** 2 for i in range(len(pts))) < tol:
        raise ConditioningError(
            f"Cholesky pivot below tolerance at {EXTENDED_DPS} digits "
            f"(condition ~ {cond:.3e})",
            condition=cond,
        )
    rhs = ctx.matrix([ctx.mpf(float(v)) for v in f])
    c = ctx.cholesky_solve(a, rhs)
    resid = max(abs(v) for v in (a * c - rhs))
    return tuple(c[i] for i in range(len(pts))), float(resid)


def _exact_condition(beta, pts) -> float:
    ctx = _mp_context()
    w = ctx.eigsy(_mp_gram(ctx, beta, pts), eigvals_only=True)
    lo, hi = min(w), max(w)
    return math.inf if lo <= 0 else float(hi / lo)


def fit_interpolant(k: GaussianKernel, centers, values, precision: str = "auto") -> Interpolant:
    """Solve the Gram system by Cholesky and verify the interpolation residuals.

    With ``precision="auto"`` a Gram matrix that is not numerically positive
    definite in double precision is refactored in extended precision (no
    regularization is ever added). ``precision="double"`` disables that.

    Raises
    ------
    ConditioningError
        If the Gram matrix is numerically not positive definite at the
        working precision. The exception carries the condition estimate.
    """
    if precision not in ("auto", "double"):
        raise ValueError(f"unknown precision mode {precision!r}")
    pts = _as_points(centers)
    f = np.asarray(values, dtype=float).reshape(-1)
    if len(f) != len(pts):
        raise ValueError(f"{len(pts)} centers but {len(f)} values")
    if not np.all(np.isfinite(f)):
        raise ValueError("values must be finite")
    a = gram_matrix(k, pts)
    cond = _condition(a)
    tol = 1e-8 * (1.0 + np.abs(f).max())
    try:
        c, resid = _solve_double(a, f, cond)
        if resid > tol:
            raise ConditioningError(
                f"interpolation residual {resid:.3e} too large (condition ~ {cond:.3e})",
                condition=cond,
            )
        return Interpolant(k, pts, c, SolveDiagnostics(len(pts), cond, resid))
    except ConditioningError:
        if precision == "double":
            raise
    cond = _exact_condition(k.beta, pts)
    mp_c, resid = _solve_extended(k.beta, pts, f, cond)
    if resid > tol:
        raise ConditioningError(
            f"interpolation residual {resid:.3e} too large (condition ~ {cond:.3e})",
            condition=cond,
        )
    diag = SolveDiagnostics(len(pts), cond, resid, precision=f"mp{EXTENDED_DPS}")
    c = np.array([float(v) for v in mp_c])
    return Interpolant(k, pts, c, diag, mp_coefficients=mp_c)


def evaluate_interpolant(s: Interpolant, x):
    """Value at a single point, or an array of values for a 2-D batch."""
    x = np.asarray(x, dtype=float)
    single = x.ndim <= 1
    pts = x.reshape(1, -1) if single else x
    if pts.shape[1] != s.centers.shape[1]:
        raise GeometryError("dimension mismatch between point and centers")
    if s.mp_coefficients is not None:
        ctx = _mp_context()
        g = _mp_gram(ctx, s.kernel.beta, pts, s.centers)
        c = ctx.matrix(list(s.mp_coefficients))
        vals = np.array([float(v) for v in g * c])
        return float(vals[0]) if single else vals
    vals = np.exp(-s.kernel.beta * cdist(pts, s.centers, "sqeuclidean")) @ s.coefficients
    return float(vals[0]) if single else vals


@dataclass(frozen=True, eq=False)
class KernelCombination:
    """``f(x) = sum_i lambda_i h(x - z_i)``, a member of the native space."""

    kernel: GaussianKernel
    sites: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        sites = _as_points(self.sites)
        lam = np.asarray(self.coefficients, dtype=float).reshape(-1)
        if len(lam) != len(sites):
            raise ValueError("sites and coefficients differ in length")
        if not np.all(np.isfinite(lam)):
            raise ValueError("coefficients must be finite")
        _check_distinct(sites)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "coefficients", lam)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        single = x.ndim <= 1
        pts = x.reshape(1, -1) if single else x
        vals = np.exp(-self.kernel.beta * cdist(pts, self.sites, "sqeuclidean")) @ self.coefficients
        return float(vals[0]) if single else vals


def native_norm(f: KernelCombination) -> float:
    a = gram_matrix(f.kernel, f.sites)
    q = float(f.coefficients @ a @ f.coefficients)
    return math.sqrt(max(q, 0.0))


def interpolant_norm(s: Interpolant) -> float:
    return native_norm(KernelCombination(s.kernel, s.centers, s.coefficients))


def sup_error_on_grid(f: KernelCombination, s: Interpolant, probe) -> tuple[float, np.ndarray]:
    """Max of ``|f - s|`` over the probe points and the maximizing point."""
    pts = _as_points(getattr(probe, "points", probe))
    if len(pts) == 0:
        raise GeometryError("empty probe grid")
    err = np.abs(f(pts) - evaluate_interpolant(s, pts))
    i = int(np.argmax(err))
    return float(err[i]), pts[i].copy()
