"""Support functions of zonoids, lift zonoids, and trimmed regions.

The zonoid of a measure is the set of vectors E[g(X) X] over measurable
g with values in [0, 1]; its support function in direction u is
E<X, u>_+. The lift zonoid prepends the mass coordinate E[g(X)] and has
support E(t + <X, u>)_+ along a lifted direction (t, u). The trimmed
region at level alpha collects the normalized barycenters (1/alpha)
E[g(X) X] with E[g(X)] = alpha; its support function integrates the
upper-alpha tail of the projection. For finite measures everything is
explicit: zonoids are zonotopes and tail integrals are greedy partial
sums with a fractional marginal atom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NonFinite, WrongDimension
from .measures import (
    Direction,
    EmpiricalMeasure,
    GaussianMeasure,
    HalfSpace,
    as_vector,
    upper_mass_split,
    _check_alpha,
    _freeze,
)
from .normal import isoperimetric, normal_cdf, normal_pdf
from .sampling import direction_grid


@dataclass(frozen=True, eq=False)
class LiftDirection:
    """Direction (t, u) in lifted space, normalized to unit Euclidean norm."""

    t: float
    spatial: np.ndarray

    def __post_init__(self):
        u = as_vector(self.spatial, name="lift direction")
        t = float(self.t)
        if math.isnan(t):
            raise NonFinite("lift direction has NaN mass component")
        n = math.hypot(t, float(np.linalg.norm(u)))
        if abs(n - 1.0) > 1e-12:
            raise DomainError(f"lift direction norm {n!r} is not 1")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "spatial", _freeze(u))

    @classmethod
    def of(cls, t: float, spatial) -> "LiftDirection":
        u = as_vector(spatial, name="lift direction")
        n = math.hypot(float(t), float(np.linalg.norm(u)))
        if n == 0.0:
            raise DomainError("cannot normalize the zero lift direction")
        return cls(float(t) / n, u / n)


@dataclass(frozen=True)
class TrimmedRegionQuery:
    """A trimming level alpha in (0, 1] paired with a query direction."""

    alpha: float
    direction: Direction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))


@dataclass(frozen=True, eq=False)
class Polygon2D:
    """Convex polygon as counterclockwise vertices, shape (k, 2)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] == 0:
            raise DimensionMismatch(f"polygon vertices must be (k, 2), got {v.shape}")
        object.__setattr__(self, "vertices", _freeze(v))

    def __len__(self) -> int:
        return self.vertices.shape[0]

    def support(self, u) -> float:
        """Support function max over vertices of <v, u>."""
        u = as_vector(u, dim=2, name="direction")
        return float(np.max(self.vertices @ u))


def _positive_part_mean(mu, offset: float, u: np.ndarray) -> float:
    """E (offset + <X, u>)_+ for an arbitrary spatial vector u (not unit)."""
    if isinstance(mu, EmpiricalMeasure):
        v = offset + mu.points @ u
        return float(mu.weights @ np.maximum(v, 0.0))
    if isinstance(mu, GaussianMeasure):
        s = offset + float(mu.location @ u)
        sigma = float(np.linalg.norm(mu.factor.T @ u))
        if sigma == 0.0:
            return max(s, 0.0)
        c = s / sigma
        return sigma * normal_pdf(c) + s * normal_cdf(c)
    raise TypeError(f"unsupported measure type {type(mu).__name__}")


def support_zonoid(mu, direction: Direction) -> float:
    """Support function of the zonoid: E <X, u>_+."""
    return _positive_part_mean(mu, 0.0, direction.vec)


def support_lift_zonoid(mu, lift: LiftDirection) -> float:
    """Support function of the lift zonoid along the normalized (t, u)."""
    return _positive_part_mean(mu, lift.t, lift.spatial)


def _trimmed_support_empirical(pts, w, u, alpha):
    v = pts @ u
    threshold, full, _, residual = upper_mass_split(v, w, alpha)
    return (float(w[full] @ v[full]) + residual * threshold) / alpha


def support_trimmed(mu, query: TrimmedRegionQuery) -> float:
    """Support function of the alpha-trimmed region.

    Equals (1/alpha) times the integral of the projection over its
    upper-alpha mass; decreasing in alpha, with value <mean, u> at
    alpha = 1.
    """
    alpha, u = query.alpha, query.direction
    if isinstance(mu, EmpiricalMeasure):
        return _trimmed_support_empirical(mu.points, mu.weights, u.vec, alpha)
    if isinstance(mu, GaussianMeasure):
        s, sigma = mu._projection_params(u)
        if alpha == 1.0:
            return s
        return s + sigma * isoperimetric(alpha) / alpha
    raise TypeError(f"unsupported measure type {type(mu).__name__}")


def trimmed_boundary_point(mu, query: TrimmedRegionQuery) -> np.ndarray:
    """Boundary point of the trimmed region attaining the support in u.

    Empirical measures include atoms above the marginal projection value
    fully and split the residual mass over the tied marginal atoms in
    proportion to their weights. Gaussian measures reduce to the
    half-space barycenter at the upper-alpha quantile.
    """
    alpha, u = query.alpha, query.direction
    if isinstance(mu, EmpiricalMeasure):
        v = mu.points @ u.vec
        _, full, tie, residual = upper_mass_split(v, mu.weights, alpha)
        acc = mu.weights[full] @ mu.points[full]
        mass_tie = float(mu.weights[tie].sum())
        if mass_tie > 0.0 and residual > 0.0:
            acc = acc + (residual / mass_tie) * (mu.weights[tie] @ mu.points[tie])
        return acc / alpha
    if isinstance(mu, GaussianMeasure):
        offset = mu.upper_quantile(u, alpha)
        if offset == -math.inf:
            return mu.mean()
        return mu.halfspace_barycenter(HalfSpace(u, offset))
    raise TypeError(f"unsupported measure type {type(mu).__name__}")


def zonotope_polygon_2d(mu: EmpiricalMeasure) -> Polygon2D:
    """Exact vertex polygon of the zonotope of a planar empirical measure.

    Classical construction: each weighted atom contributes the segment
    [0, w_i x_i]; generators are reflected into the upper half-plane
    (tracking the translation), merged when collinear, sorted by angle,
    and walked around the boundary. Runs in O(n log n); the polygon has
    at most 2n vertices.
    """
    if not isinstance(mu, EmpiricalMeasure):
        raise TypeError("zonotope_polygon_2d expects an empirical measure")
    if mu.dim != 2:
        raise WrongDimension(f"zonotope polygon is defined for dimension 2, not {mu.dim}")
    gens = mu.weights[:, None] * mu.points
    scale = float(np.abs(gens).max()) if gens.size else 0.0
    keep = np.linalg.norm(gens, axis=1) > 1e-15 * max(scale, 1.0)
    gens = gens[keep]
    if gens.shape[0] == 0:
        return Polygon2D(np.zeros((1, 2)))
    flip = (gens[:, 1] < 0.0) | ((gens[:, 1] == 0.0) & (gens[:, 0] < 0.0))
    base = gens[flip].sum(axis=0)  # translation from re-rooting flipped segments
    upper = np.where(flip[:, None], -gens, gens)
    angles = np.arctan2(upper[:, 1], upper[:, 0])
    order = np.argsort(angles, kind="stable")
    upper, angles = upper[order], angles[order]
    # merge generators that point the same way (collinear edges)
    merged: list[np.ndarray] = []
    for g, ang in zip(upper, angles):
        if merged and abs(ang - merged[-1][1]) <= 1e-12:
            merged[-1][0] += g
        else:
            merged.append([g.copy(), ang])
    edges = [g for g, _ in merged]
    path = [base]
    for g in edges:
        path.append(path[-1] + g)
    for g in edges:
        path.append(path[-1] - g)
    verts = np.array(path[:-1])  # final step returns to base
    # dedup consecutive vertices (degenerate segments)
    keep_mask = np.ones(len(verts), dtype=bool)
    tol = 1e-12 * max(scale, 1.0)
    for i in range(1, len(verts)):
        if np.all(np.abs(verts[i] - verts[i - 1]) <= tol):
            keep_mask[i] = False
    if len(verts) > 1 and np.all(np.abs(verts[-1] - verts[0]) <= tol) and keep_mask[-1]:
        keep_mask[-1] = False
    return Polygon2D(verts[keep_mask])


def hausdorff_support_distance(mu, alpha: float, beta: float, n_directions: int, seed: int = 0) -> float:
    """Max support gap between two trimmed regions over a direction grid.

    Upper-bounds depend on the grid resolution; with enough directions
    this approximates the Hausdorff distance between the convex bodies.
    """
    alpha = _check_alpha(alpha)
    beta = _check_alpha(beta)
    if n_directions < 1:
        raise DomainError("n_directions must be >= 1")
    gap = 0.0
    for row in direction_grid(mu.dim, n_directions, seed):
        q_a = TrimmedRegionQuery(alpha, Direction(row))
        q_b = TrimmedRegionQuery(beta, Direction(row))
        gap = max(gap, abs(support_trimmed(mu, q_a) - support_trimmed(mu, q_b)))
    return gap
