"""Height bound: how far the boundary strays from the plane through x inside a cylinder."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gmtlab.core.logging import get_logger
from gmtlab.sets import (
    Cylinder,
    DiscreteSet,
    PolyCurveSet,
    boundary_of,
    clip_to_region,
    region_cells,
)
from gmtlab.utils.geometry import normalize, orthonormal_frame, to_world

logger = get_logger(__name__)

# Sampling pitch for exact sets, as a fraction of r
EXACT_SAMPLE_FRACTION = 0.01


@dataclass(frozen=True)
class HeightBound:
    sup_height: float
    misplaced_volume: float
    r: float
    n: int
    empty: bool = False

    @property
    def misplaced_ratio(self) -> float:
        return self.misplaced_volume / self.r**self.n


def _cylinder_samples(
    e: DiscreteSet, cylinder: Cylinder
) -> tuple[np.ndarray, np.ndarray, float]:
    """Sample points of the cylinder, their membership in E and the volume per point."""
    if isinstance(e, PolyCurveSet):
        pitch = EXACT_SAMPLE_FRACTION * cylinder.radius
        axis = np.arange(-cylinder.radius + pitch / 2, cylinder.radius, pitch)
        local = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1).reshape(-1, 2)
        points = to_world(local, cylinder.center, cylinder.frame)
        return points, e.contains(points), pitch**2
    centers, members = region_cells(e, cylinder)
    return centers, members, e.cell_volume


def height_bound_check(
    e: DiscreteSet, x: np.ndarray, r: float, nu: np.ndarray, delta: float
) -> HeightBound:
    """sup |(y - x).nu| / r over the clipped boundary plus the volume on the wrong side of +-delta r."""
    x = np.asarray(x, dtype=float)
    nu = normalize(nu)
    cylinder = Cylinder(x, r, nu)
    clipped = clip_to_region(boundary_of(e), cylinder)
    if clipped.is_empty:
        logger.warning(f"No boundary inside the cylinder at {x.tolist()}, r={r:.4g}")
        sup_height = float("nan")
    else:
        heights = np.abs((clipped.vertices - x) @ nu)
        sup_height = float(np.minimum(heights, r).max()) / r
    points, members, weight = _cylinder_samples(e, cylinder)
    height = (points - x) @ orthonormal_frame(nu)[:, -1]
    misplaced = (members & (height > delta * r)) | (~members & (height < -delta * r))
    return HeightBound(
        sup_height=sup_height,
        misplaced_volume=float(np.count_nonzero(misplaced)) * weight,
        r=r,
        n=e.n,
        empty=clipped.is_empty,
    )
