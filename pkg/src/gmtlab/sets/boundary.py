"""Boundary access shared by every estimator: cached patches and on-boundary checks."""

from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from gmtlab.core.logging import get_logger
from gmtlab.core.settings import settings
from gmtlab.sets.patch import BoundaryPatch
from gmtlab.sets.polygon import PolyCurveSet, boundary_of_poly
from gmtlab.sets.regions import Ball
from gmtlab.sets.volume import DiscreteSet
from gmtlab.sets.voxel import VoxelSet, extract_boundary

logger = get_logger(__name__)


class OffBoundaryError(ValueError):
    """Raised when a sample point is farther from the boundary than the tolerance."""


class OutsideDomainError(ValueError):
    """Raised when a ball leaves the voxel domain."""


@lru_cache(maxsize=64)
def boundary_of(e: DiscreteSet) -> BoundaryPatch:
    """Exact edges for polygons, extracted level set for voxels (cached per set)."""
    if isinstance(e, PolyCurveSet):
        return boundary_of_poly(e)
    return extract_boundary(e)


def is_exact(e: DiscreteSet) -> bool:
    return isinstance(e, PolyCurveSet)


def boundary_tolerance(e: DiscreteSet) -> float:
    if isinstance(e, VoxelSet):
        return e.h
    return settings.numerics.exact_boundary_tolerance


def resolution(e: DiscreteSet) -> float | None:
    return e.h if isinstance(e, VoxelSet) else None


def _segment_projections(patch: BoundaryPatch, p: np.ndarray) -> np.ndarray:
    a = patch.vertices[:, 0]
    d = patch.vertices[:, 1] - a
    length2 = np.maximum(np.sum(d * d, axis=1), 1e-300)
    t = np.clip(np.sum((p - a) * d, axis=1) / length2, 0.0, 1.0)
    return a + t[:, None] * d


def distance_to_boundary(patch: BoundaryPatch, points: np.ndarray) -> np.ndarray:
    """Distance from each point to the facets.

    Exact point-to-segment distance for n=2; nearest facet vertex or
    centroid for n=3.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if patch.is_empty:
        return np.full(len(points), np.inf)
    if patch.n == 2:
        result = np.empty(len(points))
        for i, p in enumerate(points):
            closest = _segment_projections(patch, p)
            result[i] = np.min(np.linalg.norm(closest - p, axis=1))
        return result
    cloud = np.concatenate([patch.vertices.reshape(-1, 3), patch.centroids])
    distances, _ = cKDTree(cloud).query(points)
    return np.asarray(distances)


def nearest_boundary_point(e: DiscreteSet, x: np.ndarray) -> np.ndarray:
    """Closest point of the boundary to x (facet centroids for n=3)."""
    patch = boundary_of(e)
    x = np.asarray(x, dtype=float)
    if patch.is_empty:
        raise OffBoundaryError("The set has no boundary")
    candidates = _segment_projections(patch, x) if patch.n == 2 else patch.centroids
    return candidates[int(np.argmin(np.linalg.norm(candidates - x, axis=1)))]


def ensure_on_boundary(e: DiscreteSet, points: np.ndarray) -> None:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    tolerance = boundary_tolerance(e)
    distances = distance_to_boundary(boundary_of(e), points)
    far = np.flatnonzero(distances > tolerance)
    if len(far):
        k = int(far[0])
        raise OffBoundaryError(
            f"Point {points[k].tolist()} lies {distances[k]:.3g} from the boundary "
            f"(tolerance {tolerance:.3g})"
        )


def ensure_inside_domain(e: DiscreteSet, ball: Ball) -> None:
    if not isinstance(e, VoxelSet):
        return
    lo, hi = e.bounds()
    if np.any(ball.center - ball.radius < lo) or np.any(ball.center + ball.radius > hi):
        raise OutsideDomainError(
            f"Ball at {ball.center.tolist()} with radius {ball.radius:.4g} leaves the domain"
        )


def sample_boundary_points(
    patch: BoundaryPatch, stride: int = 1, seed: int = 0
) -> np.ndarray:
    """Every stride-th facet centroid, starting at an offset fixed by the seed."""
    if patch.is_empty:
        return np.zeros((0, patch.n))
    stride = max(1, stride)
    offset = int(np.random.default_rng(seed).integers(stride))
    return patch.centroids[offset::stride]
