"""Closed-form zonoid geometry of Gaussian measures.

For the standard Gaussian every trimmed region is the centered ball of
radius r(alpha) = isoperimetric(alpha)/alpha, depth is r inverted at the
whitened norm, and the half-space representation of an interior point x
is {y : <y, x/||x||> >= -g_inverse(||x||)}. General covariance is
handled strictly by whitening with the measure's factor: all geometry is
computed in whitened coordinates and mapped back.

The scalar building blocks (normal cdf/pdf/quantile, isoperimetric, the
ratio G = pdf/cdf and its inverse) are re-exported here from the scalar
module so callers have a single import point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS
from .measures import Direction, GaussianMeasure, HalfSpace, as_vector
from .normal import (
    g_inverse,
    g_ratio,
    isoperimetric,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    normal_sf,
    radius,
)

__all__ = [
    "RepresentationResult",
    "gaussian_depth",
    "gaussian_represent",
    "g_inverse",
    "g_ratio",
    "isoperimetric",
    "normal_cdf",
    "normal_pdf",
    "normal_quantile",
    "normal_sf",
    "radius",
]


@dataclass(frozen=True, eq=False)
class RepresentationResult:
    """A half-space whose barycenter is the query point.

    ``alpha`` is the mass of the half-space (equal to the depth of the
    point), ``residual`` the norm of the gap between the half-space
    barycenter and the query, ``unique`` false when ties or dual
    degeneracy make other half-spaces equally valid, ``method`` one of
    "closed-form", "lp-dual", "refined".
    """

    halfspace: HalfSpace
    alpha: float
    residual: float
    unique: bool
    method: str

    def to_json_dict(self) -> dict:
        hs = "whole-space" if self.halfspace.is_whole_space else self.halfspace.to_json_dict()
        return {
            "halfspace": hs,
            "alpha": self.alpha,
            "residual": self.residual,
            "unique": self.unique,
            "method": self.method,
        }


def _whitened(mu: GaussianMeasure, point) -> np.ndarray:
    if not isinstance(mu, GaussianMeasure):
        raise TypeError("expected a Gaussian measure")
    x = as_vector(point, dim=mu.dim, name="point")
    return mu.whiten(x)


def gaussian_depth(mu: GaussianMeasure, point) -> float:
    """Zonoid depth of ``point``: the alpha with radius(alpha) = whitened norm.

    Solved by bracketed bisection on the strictly decreasing radius map,
    seeded with the inverse-ratio closed form.
    """
    rho = float(np.linalg.norm(_whitened(mu, point)))
    if rho <= DEFAULT_TOLS.mean_radius:
        return 1.0
    seed = normal_cdf(g_inverse(rho))
    if seed <= 0.0:
        return 0.0  # whitened norm beyond representable radius
    lo = seed
    while radius(lo) < rho:
        lo *= 0.5
        if lo < 1e-300:
            return 0.0
    hi = min(seed * 2.0, 1.0 - 1e-16)
    while radius(hi) > rho:
        hi = 0.5 * (1.0 + hi)
        if 1.0 - hi < 1e-16:
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if radius(mid) >= rho:
            lo = mid
        else:
            hi = mid
        if hi - lo <= DEFAULT_TOLS.depth_bisection * max(lo, 1e-300):
            break
    return 0.5 * (lo + hi)


def gaussian_represent(mu: GaussianMeasure, point) -> RepresentationResult:
    """Half-space H with barycenter equal to ``point``, unique for Gaussians."""
    x = as_vector(point, dim=mu.dim, name="point")
    xw = _whitened(mu, point)
    rho = float(np.linalg.norm(xw))
    if rho <= DEFAULT_TOLS.mean_radius:
        return RepresentationResult(
            halfspace=HalfSpace.whole_space(mu.dim),
            alpha=1.0,
            residual=float(np.linalg.norm(mu.location - x)),
            unique=True,
            method="closed-form",
        )
    u_w = xw / rho
    a_w = -g_inverse(rho)
    # {y_w : <u_w, y_w> >= a_w} in whitened coordinates pulls back through
    # y_w = A^-1 (y - m) to {y : <A^-T u_w, y> >= a_w + <A^-T u_w, m>}.
    v = np.linalg.solve(mu.factor.T, u_w)
    norm_v = float(np.linalg.norm(v))
    direction = Direction(v / norm_v)
    offset = (a_w + float(v @ mu.location)) / norm_v
    hs = HalfSpace(direction, offset)
    bary = mu.halfspace_barycenter(hs)
    return RepresentationResult(
        halfspace=hs,
        alpha=gaussian_depth(mu, point),
        residual=float(np.linalg.norm(bary - x)),
        unique=True,
        method="closed-form",
    )
