"""Computational toolkit for zonoids, lift zonoids, trimmed regions,
zonoid data depth, and half-space barycenter representations of
empirical and Gaussian measures."""

from .barycentric import (
    BarycentricCoords,
    CoordKind,
    convert_coords,
    coords_from_point,
    point_from_coords,
    represent,
    verify_uniqueness,
)
from .config import DEFAULT_TOLS, Tolerances
from .depth import (
    DepthCertificate,
    DepthStatus,
    depth_bruteforce_oracle,
    depth_dual_direction,
    zonoid_depth,
)
from .errors import (
    DegenerateMeasure,
    DimensionMismatch,
    DomainError,
    InputFormatError,
    LiftZonoidError,
    MeanPoint,
    NoDual,
    NonFinite,
    NoSolution,
    NotConverged,
    OutsideSupport,
    TooLarge,
    WrongDimension,
    ZeroMass,
)
from .gaussian import (
    RepresentationResult,
    g_inverse,
    g_ratio,
    gaussian_depth,
    gaussian_represent,
    isoperimetric,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    normal_sf,
    radius,
)
from .measures import (
    Direction,
    EmpiricalMeasure,
    EmpiricalProjection,
    GaussianMeasure,
    GaussianProjection,
    HalfSpace,
    load_empirical_csv,
    load_gaussian_json,
    load_measure,
)
from .sampling import direction_grid, task_stream
from .verify import run_suite
from .zonoid import (
    LiftDirection,
    Polygon2D,
    TrimmedRegionQuery,
    hausdorff_support_distance,
    support_lift_zonoid,
    support_trimmed,
    support_zonoid,
    trimmed_boundary_point,
    zonotope_polygon_2d,
)

__version__ = "0.1.0"

__all__ = [
    "BarycentricCoords",
    "CoordKind",
    "DEFAULT_TOLS",
    "DegenerateMeasure",
    "DepthCertificate",
    "DepthStatus",
    "DimensionMismatch",
    "Direction",
    "DomainError",
    "EmpiricalMeasure",
    "EmpiricalProjection",
    "GaussianMeasure",
    "GaussianProjection",
    "HalfSpace",
    "InputFormatError",
    "LiftDirection",
    "LiftZonoidError",
    "MeanPoint",
    "NoDual",
    "NonFinite",
    "NoSolution",
    "NotConverged",
    "OutsideSupport",
    "Polygon2D",
    "RepresentationResult",
    "TooLarge",
    "Tolerances",
    "TrimmedRegionQuery",
    "WrongDimension",
    "ZeroMass",
    "convert_coords",
    "coords_from_point",
    "depth_bruteforce_oracle",
    "depth_dual_direction",
    "direction_grid",
    "g_inverse",
    "g_ratio",
    "gaussian_depth",
    "gaussian_represent",
    "hausdorff_support_distance",
    "isoperimetric",
    "load_empirical_csv",
    "load_gaussian_json",
    "load_measure",
    "normal_cdf",
    "normal_pdf",
    "normal_quantile",
    "normal_sf",
    "point_from_coords",
    "radius",
    "represent",
    "run_suite",
    "support_lift_zonoid",
    "support_trimmed",
    "support_zonoid",
    "task_stream",
    "trimmed_boundary_point",
    "verify_uniqueness",
    "zonoid_depth",
    "zonotope_polygon_2d",
]
