"""Measure models: weighted point clouds and nondegenerate Gaussians.

Downstream geometry (support functions, trimmed regions, depth, half-space
representation) talks to measures only through the operations defined here:
one-dimensional projections, upper quantiles, half-space masses and
barycenters, and affine images. Both measure classes implement the same
method surface, so callers can stay agnostic where the math allows it.

File formats: point clouds are CSV (one atom per row, optional final
``weight`` column when a header is present), Gaussians are JSON with
``mean`` and ``covariance`` entries. The whole space is encoded as a
half-space with offset -infinity, serialized as the string ``"-inf"``.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .config import DEFAULT_TOLS
from .errors import (
    DegenerateMeasure,
    DimensionMismatch,
    DomainError,
    InputFormatError,
    NonFinite,
    ZeroMass,
)
from .normal import g_ratio, normal_cdf, normal_pdf, normal_quantile, normal_sf

log = logging.getLogger("liftzonoid")


def as_vector(x, *, dim: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float array, optionally of fixed dimension."""
    v = np.asarray(x, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"{name}: expected a nonempty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFinite(f"{name}: contains non-finite entries")
    return v


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Direction:
    """Unit vector; the norm is validated to 1 within the unit_norm tolerance."""

    vec: np.ndarray

    def __post_init__(self):
        v = as_vector(self.vec, name="direction")
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > DEFAULT_TOLS.unit_norm:
            raise DomainError(f"direction norm {n!r} is not 1 within {DEFAULT_TOLS.unit_norm}")
        object.__setattr__(self, "vec", _freeze(v))

    @classmethod
    def of(cls, coords) -> "Direction":
        """Normalize arbitrary nonzero coordinates into a Direction."""
        v = as_vector(coords, name="direction")
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise DomainError("cannot normalize the zero vector into a direction")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.vec.size

    def __neg__(self) -> "Direction":
        return Direction(-self.vec)

    def __repr__(self) -> str:
        return f"Direction({self.vec.tolist()!r})"


@dataclass(frozen=True, eq=False)
class HalfSpace:
    """Closed upper half-space {y : <y, direction> >= offset}.

    ``offset = -inf`` encodes the whole space (the direction is then
    carried along but irrelevant).
    """

    direction: Direction
    offset: float

    def __post_init__(self):
        off = float(self.offset)
        if math.isnan(off) or off == math.inf:
            raise DomainError(f"half-space offset {off!r} must be finite or -inf")
        object.__setattr__(self, "offset", off)

    @classmethod
    def whole_space(cls, dim: int) -> "HalfSpace":
        e1 = np.zeros(dim)
        e1[0] = 1.0
        return cls(Direction(e1), -math.inf)

    @property
    def is_whole_space(self) -> bool:
        return self.offset == -math.inf

    def to_json_dict(self) -> dict:
        return {
            "u": self.direction.vec.tolist(),
            "a": "-inf" if self.is_whole_space else self.offset,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "HalfSpace":
        try:
            u = obj["u"]
            a = obj["a"]
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"half-space JSON needs 'u' and 'a': {exc}") from exc
        offset = -math.inf if a == "-inf" else float(a)
        return cls(Direction.of(u), offset)


@dataclass(frozen=True, eq=False)
class EmpiricalProjection:
    """One-dimensional image of an empirical measure along a direction.

    Values are sorted ascending; the stable sort preserves atom order on
    ties. Weights are aligned with the sorted values.
    """

    direction: Direction
    values: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class GaussianProjection:
    """One-dimensional image of a Gaussian measure: a normal law N(mean, std^2)."""

    direction: Direction
    mean: float
    std: float


def upper_mass_split(values: np.ndarray, weights: np.ndarray, alpha: float):
    """Split atoms of a 1-D law at the upper-``alpha`` mass level.

    Returns ``(threshold, full, tie, residual)``: atoms with value strictly
    above ``threshold`` are fully included and carry mass at most alpha;
    atoms at the threshold share the residual mass ``alpha - mass(full)``.
    ``threshold`` is always one of the atom values (the upper quantile).
    """
    order = np.argsort(-values, kind="stable")
    cum = np.cumsum(weights[order])
    k = int(np.searchsorted(cum, alpha - 1e-12))
    k = min(k, values.size - 1)
    threshold = float(values[order[k]])
    full = values > threshold
    tie = values == threshold
    mass_full = float(weights[full].sum())
    residual = min(max(alpha - mass_full, 0.0), float(weights[tie].sum()))
    return threshold, full, tie, residual


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if math.isnan(alpha) or not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha={alpha!r} outside (0, 1]")
    return alpha


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Finite measure sum(w_i * delta_{x_i}) with positive weights summing to 1."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise DimensionMismatch(f"points must be (n, d) with n,d >= 1, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise NonFinite("points contain non-finite entries")
        w = as_vector(self.weights, name="weights")
        if w.size != pts.shape[0]:
            raise DimensionMismatch(f"{w.size} weights for {pts.shape[0]} points")
        if np.any(w <= 0.0):
            raise DomainError("weights must be strictly positive")
        total = float(w.sum())
        if abs(total - 1.0) > DEFAULT_TOLS.weight_sum:
            raise DomainError(f"weights sum to {total!r}, not 1 within {DEFAULT_TOLS.weight_sum}")
        object.__setattr__(self, "points", _freeze(pts))
        object.__setattr__(self, "weights", _freeze(w))

    @classmethod
    def uniform(cls, points) -> "EmpiricalMeasure":
        pts = np.asarray(points, dtype=float)
        n = pts.shape[0]
        return cls(pts, np.full(n, 1.0 / n))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @cached_property
    def _mean(self) -> np.ndarray:
        return _freeze(self.weights @ self.points)

    def mean(self) -> np.ndarray:
        """Weighted average of the atoms."""
        return self._mean

    def project(self, direction: Direction) -> EmpiricalProjection:
        """Law of <X, u>: sorted values with aligned weights."""
        v = self.points @ direction.vec
        order = np.argsort(v, kind="stable")
        return EmpiricalProjection(direction, _freeze(v[order]), _freeze(self.weights[order]))

    def upper_quantile(self, direction: Direction, alpha: float) -> float:
        """Atom value at which the closed upper mass of <X,u> first reaches alpha."""
        alpha = _check_alpha(alpha)
        v = self.points @ direction.vec
        threshold, _, _, _ = upper_mass_split(v, self.weights, alpha)
        return threshold

    def halfspace_mass(self, halfspace: HalfSpace) -> float:
        """Total weight of atoms inside the closed half-space."""
        if halfspace.is_whole_space:
            return 1.0
        v = self.points @ halfspace.direction.vec
        return float(self.weights[v >= halfspace.offset].sum())

    def halfspace_barycenter(self, halfspace: HalfSpace) -> np.ndarray:
        """Barycenter of the measure restricted to the half-space."""
        if halfspace.is_whole_space:
            return np.array(self.mean())
        v = self.points @ halfspace.direction.vec
        inside = v >= halfspace.offset
        mass = float(self.weights[inside].sum())
        if mass <= 0.0:
            raise ZeroMass(f"half-space at offset {halfspace.offset!r} carries no mass")
        return (self.weights[inside] @ self.points[inside]) / mass

    def affine_image(self, matrix, shift=None) -> "EmpiricalMeasure":
        """Push-forward under y = M x + b; weights are unchanged."""
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[1] != self.dim:
            raise DimensionMismatch(f"matrix shape {m.shape} does not act on dimension {self.dim}")
        b = np.zeros(m.shape[0]) if shift is None else as_vector(shift, dim=m.shape[0], name="shift")
        return EmpiricalMeasure(self.points @ m.T + b, self.weights)


@dataclass(frozen=True, eq=False)
class GaussianMeasure:
    """Nondegenerate Gaussian with mean ``location`` and factor ``factor``.

    The covariance is factor @ factor.T; the factor must be square and
    invertible. Use :meth:`from_covariance` to build from a covariance
    matrix via its Cholesky factor.
    """

    location: np.ndarray
    factor: np.ndarray

    def __post_init__(self):
        m = as_vector(self.location, name="mean")
        a = np.asarray(self.factor, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] != m.size:
            raise DimensionMismatch(f"factor shape {a.shape} does not match mean dimension {m.size}")
        if not np.all(np.isfinite(a)):
            raise NonFinite("factor contains non-finite entries")
        sv = np.linalg.svd(a, compute_uv=False)
        if sv[-1] <= 1e-12 * max(sv[0], 1.0):
            raise DegenerateMeasure("covariance factor is numerically singular")
        object.__setattr__(self, "location", _freeze(m))
        object.__setattr__(self, "factor", _freeze(a))

    @classmethod
    def from_covariance(cls, mean, covariance) -> "GaussianMeasure":
        cov = np.asarray(covariance, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise DimensionMismatch(f"covariance must be square, got {cov.shape}")
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise DegenerateMeasure(f"covariance is not positive definite: {exc}") from exc
        return cls(as_vector(mean, dim=cov.shape[0], name="mean"), chol)

    @classmethod
    def standard(cls, dim: int) -> "GaussianMeasure":
        return cls(np.zeros(dim), np.eye(dim))

    @property
    def dim(self) -> int:
        return self.location.size

    @cached_property
    def covariance(self) -> np.ndarray:
        return _freeze(self.factor @ self.factor.T)

    def mean(self) -> np.ndarray:
        return np.array(self.location)

    def whiten(self, x) -> np.ndarray:
        """Coordinates of x in the whitened frame z = factor^{-1} (x - mean)."""
        x = as_vector(x, dim=self.dim, name="point")
        return np.linalg.solve(self.factor, x - self.location)

    def unwhiten(self, z) -> np.ndarray:
        z = as_vector(z, dim=self.dim, name="point")
        return self.location + self.factor @ z

    def _projection_params(self, direction: Direction) -> tuple[float, float]:
        if direction.dim != self.dim:
            raise DimensionMismatch(f"direction dim {direction.dim} != measure dim {self.dim}")
        s = float(self.location @ direction.vec)
        sigma = float(np.linalg.norm(self.factor.T @ direction.vec))
        return s, sigma

    def project(self, direction: Direction) -> GaussianProjection:
        s, sigma = self._projection_params(direction)
        return GaussianProjection(direction, s, sigma)

    def upper_quantile(self, direction: Direction, alpha: float) -> float:
        """The a with P(<X,u> >= a) = alpha; -inf when alpha = 1."""
        alpha = _check_alpha(alpha)
        s, sigma = self._projection_params(direction)
        if alpha == 1.0:
            return -math.inf
        return s + sigma * normal_quantile(1.0 - alpha)

    def halfspace_mass(self, halfspace: HalfSpace) -> float:
        if halfspace.is_whole_space:
            return 1.0
        s, sigma = self._projection_params(halfspace.direction)
        return normal_sf((halfspace.offset - s) / sigma)

    def halfspace_barycenter(self, halfspace: HalfSpace) -> np.ndarray:
        """Conditional mean given the half-space, via the Mills-ratio closed form."""
        if halfspace.is_whole_space:
            return self.mean()
        u = halfspace.direction.vec
        s = float(self.location @ u)
        v = self.factor.T @ u
        sigma = float(np.linalg.norm(v))
        c = (halfspace.offset - s) / sigma
        if normal_sf(c) <= 0.0:
            raise ZeroMass(f"half-space at standardized offset {c!r} carries no mass")
        # E[Z | <Z, v/sigma> >= c] = (v/sigma) * pdf(c)/sf(c), pushed through the factor
        return self.location + (self.factor @ v) * (g_ratio(-c) / sigma)

    def affine_image(self, matrix, shift=None) -> "GaussianMeasure":
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[1] != self.dim:
            raise DimensionMismatch(f"matrix shape {m.shape} does not act on dimension {self.dim}")
        if m.shape[0] != m.shape[1]:
            raise DegenerateMeasure("Gaussian affine images require a square invertible matrix")
        b = np.zeros(m.shape[0]) if shift is None else as_vector(shift, dim=m.shape[0], name="shift")
        return GaussianMeasure(m @ self.location + b, m @ self.factor)


Measure = EmpiricalMeasure | GaussianMeasure


def load_empirical_csv(path) -> EmpiricalMeasure:
    """Read a point cloud from CSV.

    One atom per row. If the file has a header and its last column is
    named ``weight`` (case-insensitive), that column provides weights,
    which are renormalized to sum to 1; a deviation beyond the weight_warn
    tolerance is logged as a warning. Without a header (or without a
    weight column) atoms are uniformly weighted.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InputFormatError(f"{path}: no data rows")

    def _parse(row, row_no):
        try:
            return [float(cell) for cell in row]
        except ValueError as exc:
            raise InputFormatError(f"{path}: row {row_no}: {exc}") from exc

    header: list[str] | None = None
    try:
        [float(cell) for cell in rows[0]]
    except ValueError:
        header = [cell.strip().lower() for cell in rows[0]]
        rows = rows[1:]
        if not rows:
            raise InputFormatError(f"{path}: header but no data rows")
    parsed = [_parse(row, i + (2 if header else 1)) for i, row in enumerate(rows)]
    widths = {len(row) for row in parsed}
    if len(widths) != 1:
        raise InputFormatError(f"{path}: rows have inconsistent column counts {sorted(widths)}")
    data = np.array(parsed)
    if header and header[-1] == "weight":
        if data.shape[1] < 2:
            raise InputFormatError(f"{path}: weight column present but no coordinate columns")
        pts, w = data[:, :-1], data[:, -1]
        if np.any(w <= 0.0):
            raise InputFormatError(f"{path}: weights must be strictly positive")
        total = float(w.sum())
        if abs(total - 1.0) > DEFAULT_TOLS.weight_warn:
            log.warning("%s: weights sum to %.17g, renormalizing", path, total)
        w = w / total
    else:
        pts = data
        w = np.full(data.shape[0], 1.0 / data.shape[0])
    return EmpiricalMeasure(pts, w)


def load_gaussian_json(path) -> GaussianMeasure:
    """Read a Gaussian measure from JSON with ``mean`` and ``covariance`` keys."""
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "mean" not in obj or "covariance" not in obj:
        raise InputFormatError(f"{path}: expected an object with 'mean' and 'covariance'")
    try:
        return GaussianMeasure.from_covariance(obj["mean"], obj["covariance"])
    except DegenerateMeasure:
        raise
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def load_measure(measure_path=None, gaussian_path=None) -> Measure:
    """Load whichever of the two sources is given (exactly one required)."""
    if (measure_path is None) == (gaussian_path is None):
        raise InputFormatError("exactly one of a CSV measure or a Gaussian JSON is required")
    if measure_path is not None:
        return load_empirical_csv(measure_path)
    return load_gaussian_json(gaussian_path)
