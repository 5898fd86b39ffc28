"""Simplices, barycentric coordinates and equally spaced point grids.

A grid of degree ``l`` on an n-simplex consists of the points whose
barycentric coordinates are ``(k_1/l, ..., k_{n+1}/l)`` with nonnegative
integers summing to ``l``. These are unisolvent for polynomials of total
degree ``<= l``, so every point ``x`` of the simplex admits weights ``z``
on the grid reproducing ``p(x)`` for all such polynomials. The weights
used here are the Lagrange cardinal values ``z_j = l_j(x)``.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
import scipy.linalg

from .errors import ConditioningError, GeometryError

# relative tolerance for affine independence of the edge matrix
_RANK_TOL = 1e-12
# relative LU pivot below which the Vandermonde system counts as singular
_PIVOT_TOL = 1e-13


class OutsideSimplexWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class Simplex:
    """n+1 affinely independent vertices in R^n (rows of ``vertices``)."""

    vertices: np.ndarray
    diameter: float = field(init=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        diffs = v[:, None, :] - v[None, :, :]
        object.__setattr__(self, "diameter", float(np.sqrt((diffs**2).sum(-1)).max()))

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def to_cartesian(self, weights) -> np.ndarray:
        return np.asarray(weights, dtype=float) @ self.vertices


@dataclass(frozen=True)
class BarycentricCoords:
    weights: np.ndarray

    def inside(self, tol: float = 1e-12) -> bool:
        return bool(np.all(self.weights >= -tol))


@dataclass(frozen=True, eq=False)
class CenterGrid:
    simplex: Simplex
    degree: int
    points: np.ndarray
    bary_indices: tuple

    def __len__(self):
        return len(self.bary_indices)


@dataclass(frozen=True, eq=False)
class ReproductionWeights:
    grid: CenterGrid
    x: np.ndarray
    z: np.ndarray

    @property
    def l1_norm(self) -> float:
        return float(np.abs(self.z).sum())


def build_simplex(vertices) -> Simplex:
    """Validate ``vertices`` and return a :class:`Simplex`.

    Raises
    ------
    GeometryError
        Wrong vertex count/dimension, or affinely dependent vertices.
    """
    v = np.atleast_2d(np.asarray(vertices, dtype=float))
    if v.ndim != 2:
        raise GeometryError("vertices must be a 2-D array of points")
    n = v.shape[1]
    if n < 1 or v.shape[0] != n + 1:
        raise GeometryError(
            f"an n-simplex needs n+1 points in R^n; got {v.shape[0]} points in R^{n}"
        )
    if not np.all(np.isfinite(v)):
        raise GeometryError("vertices must be finite")
    edges = v[1:] - v[0]
    sv = np.linalg.svd(edges, compute_uv=False)
    rank = int(np.sum(sv > _RANK_TOL * max(sv.max(), np.finfo(float).tiny)))
    if rank < n:
        raise GeometryError(
            f"vertices are affinely dependent: edge matrix has rank {rank} < {n}"
        )
    return Simplex(v)


def regular_simplex(n: int, diameter: float) -> Simplex:
    """Regular n-simplex with edge length ``diameter``, one vertex at the origin.

    Vertex k is placed above the centroid of vertices 0..k-1 along axis k-1.
    """
    if n < 1:
        raise GeometryError("dimension must be >= 1")
    if not diameter > 0:
        raise GeometryError(f"diameter must be positive, got {diameter}")
    v = np.zeros((n + 1, n))
    for k in range(1, n + 1):
        v[k, : k - 1] = v[:k, : k - 1].mean(axis=0)
        v[k, k - 1] = diameter * math.sqrt((k + 1) / (2 * k))
    return build_simplex(v)


def barycentric_coordinates(s: Simplex, x) -> BarycentricCoords:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != s.dim:
        raise GeometryError(f"point has dimension {x.shape[0]}, simplex has {s.dim}")
    a = np.vstack([s.vertices.T, np.ones(s.dim + 1)])
    b = np.append(x, 1.0)
    return BarycentricCoords(np.linalg.solve(a, b))


def compositions(total: int, parts: int) -> Iterator[tuple]:
    """Nonnegative integer ``parts``-tuples summing to ``total``, ascending lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def equally_spaced_grid(s: Simplex, degree: int) -> CenterGrid:
    if degree < 1:
        raise GeometryError(f"grid degree must be >= 1, got {degree}")
    idx = tuple(compositions(degree, s.dim + 1))
    bary = np.array(idx, dtype=float) / degree
    pts = bary @ s.vertices
    pts.setflags(write=False)
    return CenterGrid(s, degree, pts, idx)


def polynomial_space_dimension(n: int, l: int) -> int:
    """Dimension of the space of n-variate polynomials of total degree <= l."""
    if n < 1 or l < 0:
        raise ValueError("need n >= 1 and l >= 0")
    return math.comb(n + l, n)


def log_polynomial_space_dimension(n: int, l: int) -> float:
    if n < 1 or l < 0:
        raise ValueError("need n >= 1 and l >= 0")
    return math.lgamma(n + l + 1) - math.lgamma(n + 1) - math.lgamma(l + 1)


def monomial_exponents(n: int, degree: int) -> list[tuple]:
    """Exponent tuples of total degree <= ``degree`` in graded-lex order."""
    out = []
    for d in range(degree + 1):
        out.extend(sorted(compositions(d, n), reverse=True))
    return out


def _monomials(local: np.ndarray, exps: Sequence[tuple]) -> np.ndarray:
    # local: (m, n) -> (m, len(exps))
    e = np.array(exps, dtype=int)
    return np.prod(local[:, None, :] ** e[None, :, :], axis=-1)


def _to_local(s: Simplex, pts: np.ndarray) -> np.ndarray:
    return (np.atleast_2d(pts) - s.centroid) / s.diameter


def reproduction_weights(grid: CenterGrid, x) -> ReproductionWeights:
    """Lagrange cardinal values of the grid at ``x``.

    ``sum_j z_j p(y_j) == p(x)`` for every polynomial of degree <= grid.degree.
    """
    s = grid.simplex
    x = np.asarray(x, dtype=float).reshape(-1)
    if not barycentric_coordinates(s, x).inside(1e-10):
        warnings.warn(f"point {x} lies outside the simplex", OutsideSimplexWarning, stacklevel=2)
    exps = monomial_exponents(s.dim, grid.degree)
    vander = _monomials(_to_local(s, grid.points), exps)
    lu, piv = scipy.linalg.lu_factor(vander.T, check_finite=True)
    diag = np.abs(np.diag(lu))
    if diag.min() < _PIVOT_TOL * diag.max():
        raise ConditioningError(
            f"Vandermonde system singular for degree {grid.degree}, n={s.dim}",
            degree=grid.degree,
            n=s.dim,
        )
    rhs = _monomials(_to_local(s, x[None, :]), exps)[0]
    z = scipy.linalg.lu_solve((lu, piv), rhs)
    return ReproductionWeights(grid, x, z)


def lebesgue_bound(l: int) -> int:
    """Upper bound C(2l-1, l) on the Lebesgue constant of degree-l equally spaced points."""
    if l < 1:
        raise ValueError("degree must be >= 1")
    return math.comb(2 * l - 1, l)


def log_lebesgue_bound(l: int) -> float:
    if l < 1:
        raise ValueError("degree must be >= 1")
    return math.lgamma(2 * l) - math.lgamma(l + 1) - math.lgamma(l)


def random_points_in_simplex(s: Simplex, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from the simplex (flat Dirichlet barycentric weights)."""
    w = rng.dirichlet(np.ones(s.dim + 1), size=count)
    return w @ s.vertices
