"""Sampled certificate for the almost-minimality constant Lambda."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gmtlab.almostmin.competitor import local_optimal_competitor
from gmtlab.almostmin.cut_metric import CutGraphSpec, CutMetricError, cut_weights
from gmtlab.anisotropy import Anisotropy
from gmtlab.core.constants import WINDOW_HALO_CELLS
from gmtlab.core.logging import get_logger
from gmtlab.sets import VoxelSet, boundary_of, sample_boundary_points
from gmtlab.utils.geometry import dyadic_radii

logger = get_logger(__name__)

OFF_BOUNDARY_NOTE = (
    "Centres are sampled boundary points. A ball that misses the boundary has "
    "gap 0 up to metrication; a ball B_r(y) that meets it lies in B_2r(x) for "
    "a sampled x within the sampling spacing, so the sup over all centres is "
    "covered with radius inflation factor 2."
)


@dataclass(frozen=True)
class GapSample:
    x: np.ndarray
    r: float
    gap: float
    relative_gap: float
    free_cells: int


@dataclass(frozen=True)
class LambdaCertificate:
    """One-sided estimate of Lambda: the largest normalized gap over the samples.

    Gaps are divided by r^{n-1+alpha}; alpha = 0 is the plain form.
    """

    samples: list[GapSample]
    r0: float
    alpha: float
    metrication_bound: float
    order: int
    skipped: int = 0
    note: str = OFF_BOUNDARY_NOTE
    lambda_hat: float = field(init=False)

    def __post_init__(self) -> None:
        if any(s.gap < 0 for s in self.samples):
            raise ValueError("Gaps must be non-negative")
        object.__setattr__(
            self, "lambda_hat", max((s.gap for s in self.samples), default=0.0)
        )

    @property
    def conclusive(self) -> bool:
        """At least one sample, and no more skipped windows than samples."""
        return bool(self.samples) and self.skipped <= len(self.samples)

    @property
    def worst(self) -> GapSample | None:
        return max(self.samples, key=lambda s: s.gap, default=None)

    @property
    def relative_lambda_hat(self) -> float:
        return max((s.relative_gap for s in self.samples), default=0.0)

    @property
    def metrication_note(self) -> str:
        return (
            f"optimized the order-{self.order} cut metric, relative error "
            f"<= {self.metrication_bound:.4f} against the Phi-perimeter"
        )


def default_radii(e: VoxelSet, r0: float) -> list[float]:
    """r0, r0/2, ... down to two cells."""
    return dyadic_radii(r0, 2 * e.h)


def with_window_room(e: VoxelSet, points: np.ndarray, r: float) -> VoxelSet:
    """e on a grid large enough for B_r(x) plus its cut neighbourhood at every point."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if not len(points):
        return e
    reach = r + WINDOW_HALO_CELLS * e.h
    room = e.padded_to(points.min(axis=0) - reach, points.max(axis=0) + reach)
    if room is not e:
        logger.debug(f"Padded the grid from {e.dims} to {room.dims} cells for r={r:.4g}")
    return room


def certify_point(
    e: VoxelSet,
    spec: CutGraphSpec,
    x: np.ndarray,
    radii: list[float],
    alpha: float = 0.0,
) -> tuple[list[GapSample], int]:
    """Gaps at one centre over all radii; windows leaving the domain are skipped."""
    samples: list[GapSample] = []
    skipped = 0
    for r in radii:
        try:
            competitor = local_optimal_competitor(e, x, r, spec)
        except CutMetricError as err:
            logger.debug(f"Skipping ({np.asarray(x).tolist()}, {r:.4g}): {err}")
            skipped += 1
            continue
        gap = max(0.0, competitor.gap_energy) / r ** (e.n - 1 + alpha)
        samples.append(
            GapSample(
                x=np.asarray(x, dtype=float),
                r=r,
                gap=gap,
                relative_gap=competitor.relative_gap,
                free_cells=competitor.free_cells,
            )
        )
    return samples, skipped


def certify_lambda(
    e: VoxelSet,
    a: Anisotropy,
    r0: float,
    points: np.ndarray | None = None,
    radii: list[float] | None = None,
    order: int = 8,
    stride: int = 1,
    alpha: float = 0.0,
    seed: int = 0,
) -> LambdaCertificate:
    """Largest gap P(E, W) - min P(F, W) over sampled centres and radii r <= r0.

    Centres default to every ``stride``-th boundary facet centroid. The grid
    is padded with complement cells so that no window leaves it. The
    default radii are dyadic from r0, so a larger r0 only adds samples and
    never lowers lambda_hat.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    radii = default_radii(e, r0) if radii is None else list(radii)
    if any(r > r0 for r in radii):
        raise ValueError(f"Every radius must be <= r0={r0}")
    if points is None:
        points = sample_boundary_points(boundary_of(e), stride=stride, seed=seed)
    e = with_window_room(e, points, max(radii, default=0.0))
    spec = cut_weights(a, e.h, order)
    samples: list[GapSample] = []
    skipped = 0
    for x in np.atleast_2d(points):
        point_samples, point_skipped = certify_point(e, spec, x, radii, alpha)
        samples.extend(point_samples)
        skipped += point_skipped
    return LambdaCertificate(
        samples=samples,
        r0=r0,
        alpha=alpha,
        metrication_bound=spec.metrication_bound,
        order=order,
        skipped=skipped,
    )
