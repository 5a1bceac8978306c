"""Reifenberg flatness: Hausdorff closeness to a plane plus correct separation, in every sampled sub-ball."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from gmtlab.core.constants import CIRCLE_EXCESS_PER_DELTA_SQUARED
from gmtlab.core.logging import get_logger
from gmtlab.core.settings import settings
from gmtlab.excess.functionals import EmptyBoundaryError, fit_direction
from gmtlab.sets import (
    Ball,
    BoundaryPatch,
    DiscreteSet,
    boundary_of,
    clip_to_region,
    distance_to_boundary,
    ensure_inside_domain,
    resolution,
)
from gmtlab.utils.geometry import dyadic_radii, orthonormal_frame, to_world

logger = get_logger(__name__)

GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))
# Sub-ball radii stop at r / 8, and at 8h on voxel sets
SMALLEST_FRACTION = 8
VOXEL_SMALLEST_CELLS = 8


@dataclass(frozen=True)
class SubBallResult:
    y: np.ndarray
    r: float
    normal: np.ndarray
    distance: float
    separation_ok: bool
    skipped: bool = False


@dataclass(frozen=True)
class ReifenbergReport:
    x: np.ndarray
    r: float
    delta: float
    delta_measured: float
    worst_ball: tuple[np.ndarray, float] | None
    separation_ok: bool
    subballs: list[SubBallResult] = field(default_factory=list)

    @property
    def planes(self) -> dict[tuple[tuple[float, ...], float], np.ndarray]:
        """(y, r') -> unit normal of the hyperplane H through y."""
        return {
            (tuple(float(c) for c in b.y), b.r): b.normal
            for b in self.subballs
            if not b.skipped
        }

    @property
    def skipped(self) -> int:
        return sum(b.skipped for b in self.subballs)

    @property
    def passed(self) -> bool:
        return self.delta_measured <= self.delta and self.separation_ok


def epsilon_of_delta(delta: float) -> float:
    """Excess level below which a circle passes the check at level delta."""
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    return CIRCLE_EXCESS_PER_DELTA_SQUARED * delta**2


@dataclass(frozen=True)
class RegularityHypotheses:
    """Smallness of Lambda, excess and ell r against epsilon(delta).

    ``sup_excess`` is None when the scan has no trusted scale.
    """

    delta: float
    lambda_hat: float
    sup_excess: float | None
    ell_r: float
    epsilon: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", epsilon_of_delta(self.delta))

    @property
    def violated(self) -> list[str]:
        names = [
            name
            for name, value in (("lambda_hat", self.lambda_hat), ("ell_r", self.ell_r))
            if value > self.epsilon
        ]
        if self.sup_excess is None or self.sup_excess > self.epsilon:
            names.append("sup_excess")
        return names

    @property
    def hold(self) -> bool:
        return not self.violated


def plane_disk_samples(
    y: np.ndarray, radius: float, normal: np.ndarray, count: int
) -> np.ndarray:
    """Quasi-uniform points of H intersected with B_radius(y)."""
    frame = orthonormal_frame(normal)
    k = np.arange(count) + 0.5
    if len(y) == 2:
        local = np.column_stack([radius * (2.0 * k / count - 1.0), np.zeros(count)])
    else:
        rho = radius * np.sqrt(k / count)
        angle = GOLDEN_ANGLE * k
        local = np.column_stack([rho * np.cos(angle), rho * np.sin(angle), np.zeros(count)])
    return to_world(local, y, frame)


def _boundary_points(clipped: BoundaryPatch, radius: float) -> np.ndarray:
    if clipped.n == 2:
        dense = clipped.subdivided(radius / 200)
        return np.concatenate([dense.vertices.reshape(-1, 2), dense.centroids])
    return np.concatenate([clipped.vertices.reshape(-1, 3), clipped.centroids])


def _plane_to_boundary(clipped: BoundaryPatch, samples: np.ndarray) -> float:
    if clipped.n == 2:
        return float(distance_to_boundary(clipped, samples).max())
    cloud = np.concatenate([clipped.vertices.reshape(-1, 3), clipped.centroids])
    distances, _ = cKDTree(cloud).query(samples)
    return float(np.max(distances))


def _ball_samples(
    rng: np.random.Generator, y: np.ndarray, radius: float, count: int
) -> np.ndarray:
    n = len(y)
    directions = rng.standard_normal((count, n))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    lengths = radius * rng.random(count) ** (1.0 / n)
    return y + directions * lengths[:, None]


def _subball(
    e: DiscreteSet,
    patch: BoundaryPatch,
    y: np.ndarray,
    radius: float,
    delta: float,
    rng: np.random.Generator,
) -> SubBallResult:
    clipped = clip_to_region(patch, Ball(y, radius))
    if clipped.is_empty:
        return SubBallResult(
            y=y,
            r=radius,
            normal=np.zeros(len(y)),
            distance=0.0,
            separation_ok=True,
            skipped=True,
        )
    normal = fit_direction(clipped, radius).nu_opt
    boundary_side = float(np.max(np.abs((_boundary_points(clipped, radius) - y) @ normal)))
    samples = plane_disk_samples(y, radius, normal, settings.numerics.plane_samples)
    plane_side = _plane_to_boundary(clipped, samples)
    distance = max(boundary_side, plane_side) / radius

    z = _ball_samples(rng, y, radius, settings.numerics.separation_samples)
    height = (z - y) @ normal
    members = e.contains(z)
    above = height >= 2 * delta * radius
    below = height <= -2 * delta * radius
    separation_ok = not (np.any(members & above) or np.any(~members & below))
    return SubBallResult(
        y=y,
        r=radius,
        normal=normal,
        distance=distance,
        separation_ok=separation_ok,
    )


def reifenberg_check(
    e: DiscreteSet,
    x: np.ndarray,
    r: float,
    delta: float,
    subball_count: int = 16,
    seed: int = 0,
) -> ReifenbergReport:
    """Sample sub-balls B_{r'}(y) of B_r(x) centred on the boundary and test each against its best plane.

    The first sub-ball is always B_{r/2}(x); the rest use dyadic radii and
    boundary centres drawn with the seed. The plane through y has the
    minimizing direction of the spherical excess as normal. A sub-ball
    fails separation when a sample at height >= 2 delta r' above the
    plane lies in E, or one at the same depth below it lies outside E.
    """
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    x = np.asarray(x, dtype=float)
    ensure_inside_domain(e, Ball(x, r))
    patch = boundary_of(e)
    in_ball = clip_to_region(patch, Ball(x, r))
    if in_ball.is_empty:
        raise EmptyBoundaryError(f"No boundary in B_{r:.4g}({x.tolist()})")

    r_min = r / SMALLEST_FRACTION
    h = resolution(e)
    if h is not None:
        r_min = max(r_min, VOXEL_SMALLEST_CELLS * h)
    radii = dyadic_radii(r / 2, r_min)
    candidates = _boundary_points(in_ball, r)
    rng = np.random.default_rng(seed)

    results = [_subball(e, patch, x, r / 2, delta, rng)]
    for i in range(1, max(1, subball_count)):
        radius = radii[i % len(radii)]
        eligible = candidates[np.linalg.norm(candidates - x, axis=1) <= r - radius]
        if not len(eligible):
            logger.debug(f"No boundary centre for a sub-ball of radius {radius:.4g}")
            results.append(
                SubBallResult(
                    y=x,
                    r=radius,
                    normal=np.zeros(len(x)),
                    distance=0.0,
                    separation_ok=True,
                    skipped=True,
                )
            )
            continue
        y = eligible[int(rng.integers(len(eligible)))]
        results.append(_subball(e, patch, y, radius, delta, rng))

    measured = [b for b in results if not b.skipped]
    if not measured:
        return ReifenbergReport(
            x=x,
            r=r,
            delta=delta,
            delta_measured=0.0,
            worst_ball=None,
            separation_ok=True,
            subballs=results,
        )
    worst = max(measured, key=lambda b: b.distance)
    return ReifenbergReport(
        x=x,
        r=r,
        delta=delta,
        delta_measured=worst.distance,
        worst_ball=(worst.y, worst.r),
        separation_ok=all(b.separation_ok for b in measured),
        subballs=results,
    )
