from gmtlab.excess.functionals import (
    DirectionFit,
    EmptyBoundaryError,
    FlatnessFit,
    cylindrical_excess,
    directional_excess,
    fit_direction,
    flatness,
    flatness_at,
    flatness_on_patch,
    spherical_excess,
)
from gmtlab.excess.scan import ScaleEntry, ScaleScan, multiscale_scan, scan_ball

__all__ = [
    "DirectionFit",
    "EmptyBoundaryError",
    "FlatnessFit",
    "ScaleEntry",
    "ScaleScan",
    "cylindrical_excess",
    "directional_excess",
    "fit_direction",
    "flatness",
    "flatness_at",
    "flatness_on_patch",
    "multiscale_scan",
    "scan_ball",
    "spherical_excess",
]
