"""Scan for points where the excess stays above epsilon at every trusted scale."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gmtlab.core.logging import get_logger
from gmtlab.excess.scan import multiscale_scan
from gmtlab.sets import (
    Ball,
    DiscreteSet,
    PolyCurveSet,
    boundary_of,
    sample_boundary_points,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class SingularCandidate:
    x: np.ndarray
    deepest_trusted_radius: float
    min_excess: float


@dataclass(frozen=True)
class SingularScanReport:
    epsilon: float
    theta: float
    r0: float
    k_max: int
    scanned: int
    candidates: list[SingularCandidate] = field(default_factory=list)

    @property
    def points(self) -> np.ndarray:
        if not self.candidates:
            return np.zeros((0, 2))
        return np.array([c.x for c in self.candidates])


def scan_points(
    e: DiscreteSet,
    stride: int = 1,
    region: Ball | None = None,
    seed: int = 0,
) -> np.ndarray:
    """Polygon vertices, or every stride-th extracted facet centroid."""
    if isinstance(e, PolyCurveSet):
        points = e.vertices()[:: max(1, stride)]
    else:
        points = sample_boundary_points(boundary_of(e), stride=stride, seed=seed)
    if region is not None:
        points = points[region.contains(points)]
    return points


def is_singular(
    e: DiscreteSet, x: np.ndarray, epsilon: float, theta: float, r0: float, k_max: int
) -> SingularCandidate | None:
    scan = multiscale_scan(e, x, theta, r0, k_max)
    trusted = scan.trusted_entries
    if not trusted:
        return None
    excesses = [entry.excess for entry in trusted]
    if min(excesses) <= epsilon:
        return None
    return SingularCandidate(
        x=np.asarray(x, dtype=float),
        deepest_trusted_radius=trusted[-1].r,
        min_excess=min(excesses),
    )


def singular_scan(
    e: DiscreteSet,
    epsilon: float,
    theta: float,
    r0: float,
    k_max: int,
    points: np.ndarray | None = None,
    stride: int = 1,
    region: Ball | None = None,
    seed: int = 0,
) -> SingularScanReport:
    """Candidates for Sigma_epsilon: excess above epsilon at every trusted scale of their scan."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if points is None:
        points = scan_points(e, stride=stride, region=region, seed=seed)
    candidates = []
    for x in np.atleast_2d(points):
        candidate = is_singular(e, x, epsilon, theta, r0, k_max)
        if candidate is not None:
            candidates.append(candidate)
    logger.debug(f"Singular scan: {len(candidates)} of {len(points)} points flagged")
    return SingularScanReport(
        epsilon=epsilon,
        theta=theta,
        r0=r0,
        k_max=k_max,
        scanned=len(points),
        candidates=candidates,
    )
